#include "spinbath/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "spinbath/config.hpp"

namespace spinbath {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fid_csv(const FIDRecord& f) {
  std::ostringstream out;
  out << "t_s,re_s,im_s,trace_dist\n";
  for (int k = 0; k < f.grid.points(); ++k) {
    const size_t i = static_cast<size_t>(k);
    out << format_g17(f.grid.t(k)) << ',' << format_g17(f.s[i].real()) << ','
        << format_g17(f.s[i].imag()) << ',' << format_g17(f.trace_dist[i])
        << '\n';
  }
  return out.str();
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
  std::ostringstream out;
  out << "freq_hz,re,im,abs\n";
  for (const SpectrumRow& r : rows)
    out << format_g17(r.freq_hz) << ',' << format_g17(r.amp.real()) << ','
        << format_g17(r.amp.imag()) << ',' << format_g17(std::abs(r.amp))
        << '\n';
  return out.str();
}

std::string blp_csv(const TimeGrid& grid, const BLPResult& blp) {
  std::ostringstream out;
  out << "t,d_opt,sigma\n";
  for (int k = 0; k < grid.points(); ++k) {
    const size_t i = static_cast<size_t>(k);
    out << format_g17(grid.t(k)) << ',' << format_g17(blp.d_opt[i]) << ','
        << format_g17(blp.sigma[i]) << '\n';
  }
  return out.str();
}

namespace {

std::array<double, 3> bloch_of(const DensityMatrix& rho) {
  return {(rho.entries * pauli_x()).trace().real(),
          (rho.entries * pauli_y()).trace().real(),
          (rho.entries * pauli_z()).trace().real()};
}

nlohmann::json complex_pairs(const Matrix& m) {
  // Row-major [re, im] pairs.
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string blp_summary_json(const BLPResult& blp) {
  nlohmann::json j;
  j["N"] = blp.n;
  j["pair"] = {
      {"p", blp.best_pair.p},
      {"bloch1", bloch_of(blp.best_pair.rho1)},
      {"bloch2", bloch_of(blp.best_pair.rho2)},
  };
  j["nyquist_warning"] = blp.nyquist_warning;
  return j.dump(2) + "\n";
}

std::string channel_json(const std::vector<SuperMap>& maps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SuperMap& map : maps) {
    nlohmann::json entry;
    entry["t"] = map.t;
    entry["superop"] = complex_pairs(map.m);
    Matrix c = choi_matrix(map);
    c = 0.5 * (c + c.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
    entry["choi_min_eig"] = es.eigenvalues().minCoeff();
    nlohmann::json kraus = nlohmann::json::array();
    try {
      for (const Matrix& k : to_kraus(map).kraus_ops)
        kraus.push_back(complex_pairs(k));
      entry["kraus"] = std::move(kraus);
    } catch (const NotCompletelyPositive&) {
      entry["kraus"] = nullptr;  // non-CP map has no operator-sum form
    }
    arr.push_back(std::move(entry));
  }
  return arr.dump(2) + "\n";
}

std::string otoc_csv(const TimeGrid& grid, const std::vector<OTOCResult>& rows) {
  std::ostringstream out;
  out << "tau_s,re_f,im_f,comm_sq\n";
  for (int k = 0; k < grid.points(); ++k) {
    const OTOCResult& r = rows[static_cast<size_t>(k)];
    out << format_g17(grid.t(k)) << ',' << format_g17(r.f.real()) << ','
        << format_g17(r.f.imag()) << ',' << format_g17(r.comm_sq) << '\n';
  }
  return out.str();
}

std::string lightcone_csv(const Molecule& m, const std::vector<ArrivalRow>& rows) {
  std::ostringstream out;
  out << "site,distance,arrival_t_s\n";
  for (const ArrivalRow& r : rows)
    out << m.sites[static_cast<size_t>(r.site)].label << ',' << r.distance
        << ',' << format_g17(r.arrival_t) << '\n';
  return out.str();
}

CsvTable read_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  CsvTable table;
  if (!std::getline(in, line))
    fail(ErrorCode::config, path + ": empty CSV");
  for (const std::string& h : split_list(trim(line), ',')) table.header.push_back(h);
  table.columns.assign(table.header.size(), {});
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_list(line, ',');
    if (cells.size() != table.header.size())
      fail(ErrorCode::config,
           path + ":" + std::to_string(lineno) + ": ragged CSV row");
    for (size_t c = 0; c < cells.size(); ++c)
      table.columns[c].push_back(
          parse_double(cells[c], path + ":" + std::to_string(lineno)));
  }
  return table;
}

std::string CompareReport::to_text() const {
  std::ostringstream out;
  for (const ColumnReport& c : columns)
    out << c.name << ": max |dev| = " << format_g17(c.max_abs_dev) << '\n';
  out << (pass ? "PASS" : "FAIL") << " (tol " << format_g17(tol) << ")\n";
  return out.str();
}

CompareReport compare_files(const std::string& path_a, const std::string& path_b,
                            double tol) {
  const CsvTable a = read_csv(path_a);
  const CsvTable b = read_csv(path_b);
  if (a.header != b.header)
    fail(ErrorCode::config, "compare: headers differ");
  if (a.rows() != b.rows())
    fail(ErrorCode::config, "compare: grid mismatch (row counts differ)");
  if (!a.columns.empty())
    for (size_t r = 0; r < a.rows(); ++r)
      if (a.columns[0][r] != b.columns[0][r])
        fail(ErrorCode::config, "compare: grid mismatch in column " + a.header[0]);

  CompareReport rep;
  rep.tol = tol;
  rep.pass = true;
  for (size_t c = 1; c < a.columns.size(); ++c) {
    double dev = 0.0;
    for (size_t r = 0; r < a.rows(); ++r)
      dev = std::max(dev, std::abs(a.columns[c][r] - b.columns[c][r]));
    rep.columns.push_back({a.header[c], dev});
    if (dev > tol) rep.pass = false;
  }
  return rep;
}

}  // namespace spinbath
