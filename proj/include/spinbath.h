/* C interface to the spinbath simulation core. All entry points return a
 * spb_status; on failure spb_last_error() carries a one-line diagnostic.
 * Strings returned through char** are owned by the caller and must be
 * released with spb_string_free(). */

#ifndef SPINBATH_H
#define SPINBATH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spb_status {
  SPB_OK = 0,
  SPB_ERR_INVALID = 1, /* library misuse / unexpected failure */
  SPB_ERR_CONFIG = 2,  /* unparsable or inconsistent configuration */
  SPB_ERR_ENGINE = 3,  /* engine incompatible with the request */
  SPB_ERR_NUMERIC = 4, /* numerical failure                     */
  SPB_ERR_IO = 5       /* file system failure                   */
} spb_status;

const char* spb_version(void);
/* Thread-local message describing the most recent failure; empty string
 * when the last call on this thread succeeded. */
const char* spb_last_error(void);
void spb_string_free(char* s);

/* ---- scenarios ------------------------------------------------------ */

typedef struct spb_scenario spb_scenario;

/* Opens a built-in scenario by name, or a config file when the argument
 * contains '/' or ends in ".conf". */
spb_status spb_scenario_open(const char* name_or_path, spb_scenario** out);
void spb_scenario_close(spb_scenario* s);

spb_status spb_scenario_set_seed(spb_scenario* s, uint64_t seed);
spb_status spb_scenario_set_traj(spb_scenario* s, uint64_t n_traj);
/* Comma-separated subset of fid,spectrum,channel,blp,otoc,lightcone. */
spb_status spb_scenario_set_outputs(spb_scenario* s, const char* csv_list);

/* Runs the scenario and writes its output files plus a manifest under
 * outdir. When manifest_json is non-NULL it receives the manifest text. */
spb_status spb_scenario_run(spb_scenario* s, const char* outdir,
                            char** manifest_json);

/* Human-readable registry table, one scenario per line. */
spb_status spb_scenario_list(char** out);

/* ---- molecules ------------------------------------------------------ */

typedef struct spb_molecule spb_molecule;

spb_status spb_molecule_open(const char* name_or_path, spb_molecule** out);
void spb_molecule_close(spb_molecule* m);
int spb_molecule_site_count(const spb_molecule* m);
int spb_molecule_active_count(const spb_molecule* m);
const char* spb_molecule_name(const spb_molecule* m);

/* ---- result comparison ---------------------------------------------- */

/* Column-wise maximum absolute deviation between two CSV files with the
 * same header and grid column. *pass is 1 when every column stays within
 * tol. The optional report receives one line per column. */
spb_status spb_compare_files(const char* file_a, const char* file_b,
                             double tol, int* pass, double* max_dev,
                             char** report);

#ifdef __cplusplus
}
#endif

#endif /* SPINBATH_H */
