#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinbath/channels.hpp"
#include "spinbath/dynamics.hpp"

namespace spinbath {

/// Shortest representation that round-trips a double (17 significant digits).
std::string format_g17(double v);

/// FNV-1a 64-bit digest, lowercase hex.
std::string fnv1a64_hex(const std::string& bytes);

std::string fid_csv(const FIDRecord& f);
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);
std::string blp_csv(const TimeGrid& grid, const BLPResult& blp);
std::string blp_summary_json(const BLPResult& blp);
std::string channel_json(const std::vector<SuperMap>& maps);
std::string otoc_csv(const TimeGrid& grid, const std::vector<OTOCResult>& rows);
std::string lightcone_csv(const Molecule& m, const std::vector<ArrivalRow>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
  size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
};

CsvTable read_csv(const std::string& path);

struct ColumnReport {
  std::string name;
  double max_abs_dev = 0.0;
};

struct CompareReport {
  bool pass = false;
  double tol = 0.0;
  std::vector<ColumnReport> columns;
  std::string to_text() const;
};

/// Column-wise maximum absolute deviation between two CSV files sharing a
/// header and an identical first (grid) column.
CompareReport compare_files(const std::string& path_a, const std::string& path_b,
                            double tol);

}  // namespace spinbath
