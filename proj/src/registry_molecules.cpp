#include <string>
#include <utility>
#include <vector>
namespace spinbath {
// Built-in molecule definitions. Identical copies ship as editable files
// under share/molecules/; a test keeps the two in sync.
const std::vector<std::pair<std::string, std::string>>& builtin_molecules() {
  static const std::vector<std::pair<std::string, std::string>> defs = {
      {"chloroform",
       R"MOL(# Chloroform (CHCl3): the carbon-13 spin is the observed system, the single
# hydrogen is the ancilla. Chlorine nuclei are magnetically inert.
# J(C,H) = 215 Hz. The plain sample has no reset mechanism on the
# simulated time scale.

[molecule]
name = chloroform
system = c

[sites]
# label  species  omega0_hz  t1_s
c  C13  0.0  0
h  H1   0.0  0

[couplings]
# site_a  site_b  j_hz
c  h  215.0
)MOL"},
      {"chloroform-reset",
       R"MOL(# Chloroform with paramagnetic Fe(III) impurities resetting the hydrogen
# ancilla (T1,H = 70 ms). The carbon is much less affected by the impurity
# field and is modeled as reset-free on the observed time scale.

[molecule]
name = chloroform-reset
system = c

[sites]
# label  species  omega0_hz  t1_s
c  C13  0.0  0
h  H1   0.0  0.070

[couplings]
# site_a  site_b  j_hz
c  h  215.0
)MOL"},
      {"tms",
       R"MOL(# Tetramethylsilane (TMS): the silicon-29 spin couples equally to twelve
# equivalent methyl hydrogens, J(Si,H) = 6.6 Hz; molecular symmetry leaves
# no H-H couplings. The measured relaxation times of the undoped sample
# (Si 16 s, H 10 s) lie far beyond the simulated windows and are modeled
# as no reset; the doped variants carry the short T1 values.

[molecule]
name = tms
system = si

[sites]
# label  species  omega0_hz  t1_s
si   Si29  0.0  0
h1   H1    0.0  0
h2   H1    0.0  0
h3   H1    0.0  0
h4   H1    0.0  0
h5   H1    0.0  0
h6   H1    0.0  0
h7   H1    0.0  0
h8   H1    0.0  0
h9   H1    0.0  0
h10  H1    0.0  0
h11  H1    0.0  0
h12  H1    0.0  0

[couplings]
# site_a  site_b  j_hz
si  h1   6.6
si  h2   6.6
si  h3   6.6
si  h4   6.6
si  h5   6.6
si  h6   6.6
si  h7   6.6
si  h8   6.6
si  h9   6.6
si  h10  6.6
si  h11  6.6
si  h12  6.6
)MOL"},
      {"tms-19mM",
       R"MOL(# Tetramethylsilane doped with 19 mM Fe(III) impurities: the impurity
# field resets the methyl hydrogens with T1,H = 140 ms; the silicon T1
# drops to 2.6 s but stays far beyond the simulated window.

[molecule]
name = tms-19mM
system = si

[sites]
# label  species  omega0_hz  t1_s
si   Si29  0.0  2.6
h1   H1    0.0  0.140
h2   H1    0.0  0.140
h3   H1    0.0  0.140
h4   H1    0.0  0.140
h5   H1    0.0  0.140
h6   H1    0.0  0.140
h7   H1    0.0  0.140
h8   H1    0.0  0.140
h9   H1    0.0  0.140
h10  H1    0.0  0.140
h11  H1    0.0  0.140
h12  H1    0.0  0.140

[couplings]
# site_a  site_b  j_hz
si  h1   6.6
si  h2   6.6
si  h3   6.6
si  h4   6.6
si  h5   6.6
si  h6   6.6
si  h7   6.6
si  h8   6.6
si  h9   6.6
si  h10  6.6
si  h11  6.6
si  h12  6.6
)MOL"},
      {"tms-40mM",
       R"MOL(# Tetramethylsilane doped with 40 mM Fe(III) impurities: the impurity
# field resets the methyl hydrogens with T1,H = 70 ms; the silicon T1
# drops to 1.4 s but stays far beyond the simulated window.

[molecule]
name = tms-40mM
system = si

[sites]
# label  species  omega0_hz  t1_s
si   Si29  0.0  1.4
h1   H1    0.0  0.070
h2   H1    0.0  0.070
h3   H1    0.0  0.070
h4   H1    0.0  0.070
h5   H1    0.0  0.070
h6   H1    0.0  0.070
h7   H1    0.0  0.070
h8   H1    0.0  0.070
h9   H1    0.0  0.070
h10  H1    0.0  0.070
h11  H1    0.0  0.070
h12  H1    0.0  0.070

[couplings]
# site_a  site_b  j_hz
si  h1   6.6
si  h2   6.6
si  h3   6.6
si  h4   6.6
si  h5   6.6
si  h6   6.6
si  h7   6.6
si  h8   6.6
si  h9   6.6
si  h10  6.6
si  h11  6.6
si  h12  6.6
)MOL"},
      {"dss",
       R"MOL(# DSS (4,4-dimethyl-4-silapentane-1-sulfonic acid) in D2O, sixteen spins:
# the silicon-29 system plus fifteen hydrogens (nine methyl, six in the
# propyl chain; the sulfo hydrogen is detached in water).
#
# Only the 6.6 Hz methyl Si-H coupling and the ~10 Hz order of the chain
# H-H couplings are measured for this sample. The remaining values are
# assumed from typical 2/3/4-bond couplings in organosilanes and are
# marked below; edit freely to explore other networks.
#   Si-H chain: 7.0 / 3.1 / 1.0 Hz at 2/3/4 bonds   (assumed)
#   H-H adjacent-carbon pairs: 10.0 Hz              (order measured)

[molecule]
name = dss
system = si

[sites]
# label  species  omega0_hz  t1_s
si   Si29  0.0     7
m1   H1    0.0     3
m2   H1    0.0     3
m3   H1    0.0     3
m4   H1    0.0     3
m5   H1    0.0     3
m6   H1    0.0     3
m7   H1    0.0     3
m8   H1    0.0     3
m9   H1    0.0     3
ha1  H1    300.0   1.5
ha2  H1    300.0   1.5
hb1  H1    850.0   1.5
hb2  H1    850.0   1.5
hc1  H1    1450.0  1.5
hc2  H1    1450.0  1.5

[couplings]
# site_a  site_b  j_hz
si   m1   6.6
si   m2   6.6
si   m3   6.6
si   m4   6.6
si   m5   6.6
si   m6   6.6
si   m7   6.6
si   m8   6.6
si   m9   6.6
si   ha1  7.0
si   ha2  7.0
si   hb1  3.1
si   hb2  3.1
si   hc1  1.0
si   hc2  1.0
ha1  hb1  10.0
ha1  hb2  10.0
ha2  hb1  10.0
ha2  hb2  10.0
hb1  hc1  10.0
hb1  hc2  10.0
hb2  hc1  10.0
hb2  hc2  10.0
)MOL"},
      {"dss-decoupled",
       R"MOL(# DSS with every hydrogen decoupled: the silicon-29 spin is the only
# active nucleus, so the effective Hamiltonian vanishes and the model FID
# stays constant (the residual decay of the real sample comes from solvent
# coupling outside this model).

[molecule]
name = dss-decoupled
system = si
decoupled = m1, m2, m3, m4, m5, m6, m7, m8, m9, ha1, ha2, hb1, hb2, hc1, hc2

[sites]
# label  species  omega0_hz  t1_s
si   Si29  0.0     7
m1   H1    0.0     3
m2   H1    0.0     3
m3   H1    0.0     3
m4   H1    0.0     3
m5   H1    0.0     3
m6   H1    0.0     3
m7   H1    0.0     3
m8   H1    0.0     3
m9   H1    0.0     3
ha1  H1    300.0   1.5
ha2  H1    300.0   1.5
hb1  H1    850.0   1.5
hb2  H1    850.0   1.5
hc1  H1    1450.0  1.5
hc2  H1    1450.0  1.5

[couplings]
# site_a  site_b  j_hz
si   m1   6.6
si   m2   6.6
si   m3   6.6
si   m4   6.6
si   m5   6.6
si   m6   6.6
si   m7   6.6
si   m8   6.6
si   m9   6.6
si   ha1  7.0
si   ha2  7.0
si   hb1  3.1
si   hb2  3.1
si   hc1  1.0
si   hc2  1.0
ha1  hb1  10.0
ha1  hb2  10.0
ha2  hb1  10.0
ha2  hb2  10.0
hb1  hc1  10.0
hb1  hc2  10.0
hb2  hc1  10.0
hb2  hc2  10.0
)MOL"},
      {"transcrotonic",
       R"MOL(# Carbon-13 enriched transcrotonic acid (CH3-CH=CH-COOH) in D2O: four
# carbons and five hydrogens (the carboxyl hydrogen is detached in water).
# The carboxyl carbon c1 is the observed system; c2/c3 are the vinyl
# carbons and c4 the methyl carbon.
#
# The C-C and one-bond C-H couplings follow the values published for this
# standard benchmark molecule. The long-range C-H and H-H couplings are
# assumed from typical vinyl/allylic magnitudes and are the editable part
# of this network.

[molecule]
name = transcrotonic
system = c1

[sites]
# label  species  omega0_hz  t1_s
c1  C13  0.0       14
c2  C13  -5908.0   10
c3  C13  -2816.0   10
c4  C13  -19010.0  8
h2  H1   3450.0    6
h3  H1   2925.0    6
m1  H1   925.0     4
m2  H1   925.0     4
m3  H1   925.0     4

[couplings]
# site_a  site_b  j_hz
c1  c2  72.4
c2  c3  69.7
c3  c4  41.6
c1  c3  1.2
c2  c4  1.5
c1  c4  7.0
c2  h2  163.0
c3  h3  155.4
c4  m1  127.5
c4  m2  127.5
c4  m3  127.5
c1  h2  3.5
c1  h3  6.8
c1  m1  0.55
c1  m2  0.55
c1  m3  0.55
c2  h3  2.5
c3  h2  4.1
c3  m1  4.2
c3  m2  4.2
c3  m3  4.2
h2  h3  15.5
h3  m1  6.9
h3  m2  6.9
h3  m3  6.9
h2  m1  1.7
h2  m2  1.7
h2  m3  1.7
)MOL"},
      {"transcrotonic-decoupled",
       R"MOL(# Transcrotonic acid with all hydrogens decoupled: only the four carbons
# stay active, shrinking the environment of the carboxyl spin to three
# nuclei. Couplings are shared with transcrotonic.mol.

[molecule]
name = transcrotonic-decoupled
system = c1
decoupled = h2, h3, m1, m2, m3

[sites]
# label  species  omega0_hz  t1_s
c1  C13  0.0       14
c2  C13  -5908.0   10
c3  C13  -2816.0   10
c4  C13  -19010.0  8
h2  H1   3450.0    6
h3  H1   2925.0    6
m1  H1   925.0     4
m2  H1   925.0     4
m3  H1   925.0     4

[couplings]
# site_a  site_b  j_hz
c1  c2  72.4
c2  c3  69.7
c3  c4  41.6
c1  c3  1.2
c2  c4  1.5
c1  c4  7.0
c2  h2  163.0
c3  h3  155.4
c4  m1  127.5
c4  m2  127.5
c4  m3  127.5
c1  h2  3.5
c1  h3  6.8
c1  m1  0.55
c1  m2  0.55
c1  m3  0.55
c2  h3  2.5
c3  h2  4.1
c3  m1  4.2
c3  m2  4.2
c3  m3  4.2
h2  h3  15.5
h3  m1  6.9
h3  m2  6.9
h3  m3  6.9
h2  m1  1.7
h2  m2  1.7
h2  m3  1.7
)MOL"},
      {"chain3",
       R"MOL(# Synthetic three-site nearest-neighbor chain used by the correlator
# demos; uniform 10 Hz couplings, well separated chemical shifts.

[molecule]
name = chain3
system = a

[sites]
# label  species  omega0_hz  t1_s
a  H1  0.0     0
b  H1  400.0   0
c  H1  800.0   0

[couplings]
# site_a  site_b  j_hz
a  b  10.0
b  c  10.0
)MOL"},
      {"chain6",
       R"MOL(# Synthetic six-site nearest-neighbor chain used by the light-cone demo;
# uniform 10 Hz couplings, well separated chemical shifts.

[molecule]
name = chain6
system = s0

[sites]
# label  species  omega0_hz  t1_s
s0  H1  0.0      0
s1  H1  400.0    0
s2  H1  800.0    0
s3  H1  1200.0   0
s4  H1  1600.0   0
s5  H1  2000.0   0

[couplings]
# site_a  site_b  j_hz
s0  s1  10.0
s1  s2  10.0
s2  s3  10.0
s3  s4  10.0
s4  s5  10.0
)MOL"},
  };
  return defs;
}

}  // namespace spinbath
