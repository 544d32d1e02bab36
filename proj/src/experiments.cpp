#include "sglnufft/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sglnufft {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BandlimitedCoefficients gen_coeffs(int bandwidth, std::uint64_t seed) {
  BandlimitedCoefficients c(bandwidth);
  Rng rng(seed);
  for (auto& v : c.data) {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    v = cplx(re, im);
  }
  return c;
}

SphericalPointSet gen_points_ball(std::size_t count, double kappa, std::uint64_t seed) {
  if (!(kappa > 0.0)) throw std::invalid_argument("gen_points_ball: kappa must be positive");
  SphericalPointSet pts(count);
  Rng rng(seed);
  for (auto& p : pts) {
    const double u = rng.uniform();
    const double c = rng.uniform(-1.0, 1.0);
    const double f = rng.uniform();
    p.r = kappa * std::cbrt(u);
    p.theta = std::acos(std::clamp(c, -1.0, 1.0));
    p.phi = kTwoPi * f;
  }
  return pts;
}

SphericalPointSet gen_grid(int n, double kappa) {
  if (n < 1) throw std::invalid_argument("gen_grid: N must be >= 1");
  if (!(kappa > 0.0)) throw std::invalid_argument("gen_grid: kappa must be positive");
  SphericalPointSet pts;
  pts.reserve(static_cast<std::size_t>(n) * n * n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        const double x = kappa * (2.0 * j / n - 1.0);
        const double y = kappa * (2.0 * k / n - 1.0);
        const double z = kappa * (2.0 * l / n - 1.0);
        SphericalPoint p;
        p.r = std::sqrt(x * x + y * y + z * z);
        p.theta = p.r > 0.0 ? std::acos(std::clamp(z / p.r, -1.0, 1.0)) : 0.0;
        double phi = std::atan2(y, x);
        if (phi < 0.0) phi += kTwoPi;
        if (phi >= kTwoPi) phi = 0.0;
        p.phi = phi;
        pts.push_back(p);
      }
    }
  }
  return pts;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void write_schema(std::ostream& out, const std::string& kind) {
  out << "# sglnufft " << kind << ' ' << kCsvSchemaVersion << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || s.empty()) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse number '" + s +
                             "'");
  }
  return v;
}

// Reads a CSV whose header must equal `columns`; returns numeric rows.
std::vector<std::vector<double>> read_table(std::istream& in, const std::string& kind,
                                            const std::vector<std::string>& columns) {
  std::string line;
  std::size_t line_no = 0;
  bool have_schema = false;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_schema) {
      std::istringstream ss(line);
      std::string hash, tag, k, version;
      ss >> hash >> tag >> k >> version;
      if (hash != "#" || tag != "sglnufft") {
        throw std::runtime_error("line 1: expected '# sglnufft " + kind + " " + kCsvSchemaVersion + "'");
      }
      if (k != kind) throw std::runtime_error("CSV holds '" + k + "' data, expected '" + kind + "'");
      if (version != kCsvSchemaVersion) {
        throw std::runtime_error("unsupported CSV schema version '" + version + "'");
      }
      have_schema = true;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (!have_header) {
      if (cells != columns) {
        std::string want;
        for (const auto& c : columns) want += (want.empty() ? "" : ",") + c;
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": expected header '" + want + "'");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != columns.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(columns.size()) + " columns");
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c, line_no));
    rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("CSV has no header row");
  return rows;
}

int as_int(double v, const char* what) {
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw std::runtime_error(std::string("non-integer value in column ") + what);
  }
  return static_cast<int>(v);
}

}  // namespace

void write_coefficients_csv(std::ostream& out, const BandlimitedCoefficients& coeffs) {
  write_schema(out, "coefficients");
  out << "mu,n,l,m,re,im\n";
  for (std::size_t mu = 0; mu < coeffs.data.size(); ++mu) {
    const auto idx = mu_to_nlm(mu, coeffs.bandwidth);
    out << mu << ',' << idx.n << ',' << idx.l << ',' << idx.m << ','
        << format_double(coeffs.data[mu].real()) << ',' << format_double(coeffs.data[mu].imag())
        << '\n';
  }
}

BandlimitedCoefficients read_coefficients_csv(std::istream& in) {
  const auto rows = read_table(in, "coefficients", {"mu", "n", "l", "m", "re", "im"});
  if (rows.empty()) throw std::runtime_error("coefficient CSV has no rows");
  int B = 1;
  while (coefficient_count(B) < rows.size()) ++B;
  if (coefficient_count(B) != rows.size()) {
    throw std::runtime_error("coefficient count " + std::to_string(rows.size()) +
                             " is not B(B+1)(2B+1)/6 for any B");
  }
  CVector data(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& row : rows) {
    const int mu = as_int(row[0], "mu");
    const SglIndex idx{as_int(row[1], "n"), as_int(row[2], "l"), as_int(row[3], "m")};
    if (mu < 0 || static_cast<std::size_t>(mu) >= rows.size() || seen[mu]) {
      throw std::runtime_error("coefficient CSV: bad or repeated mu " + std::to_string(mu));
    }
    validate(idx);
    if (nlm_to_mu(idx) != static_cast<std::size_t>(mu)) {
      throw std::runtime_error("coefficient CSV: (n,l,m) does not match mu " +
                               std::to_string(mu));
    }
    seen[mu] = true;
    data[mu] = cplx(row[4], row[5]);
  }
  return BandlimitedCoefficients(B, std::move(data));
}

void write_points_csv(std::ostream& out, const SphericalPointSet& points) {
  write_schema(out, "points");
  out << "r,theta,phi\n";
  for (const auto& p : points) {
    out << format_double(p.r) << ',' << format_double(p.theta) << ',' << format_double(p.phi)
        << '\n';
  }
}

SphericalPointSet read_points_csv(std::istream& in) {
  const auto rows = read_table(in, "points", {"r", "theta", "phi"});
  SphericalPointSet pts;
  pts.reserve(rows.size());
  for (const auto& row : rows) {
    SphericalPoint p{row[0], row[1], row[2]};
    validate(p);
    pts.push_back(p);
  }
  return pts;
}

void write_values_csv(std::ostream& out, const CVector& values) {
  write_schema(out, "values");
  out << "i,re,im\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i << ',' << format_double(values[i].real()) << ',' << format_double(values[i].imag())
        << '\n';
  }
}

CVector read_values_csv(std::istream& in) {
  const auto rows = read_table(in, "values", {"i", "re", "im"});
  CVector v(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& row : rows) {
    const int i = as_int(row[0], "i");
    if (i < 0 || static_cast<std::size_t>(i) >= rows.size() || seen[i]) {
      throw std::runtime_error("value CSV: bad or repeated index " + std::to_string(i));
    }
    seen[i] = true;
    v[i] = cplx(row[1], row[2]);
  }
  return v;
}

void CsvTable::write(std::ostream& out) const {
  write_schema(out, kind);
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
    out << '\n';
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no column named " + name);
  return static_cast<std::size_t>(it - header.begin());
}

ErrorStats max_errors(const CVector& reference, const CVector& approx) {
  if (reference.size() != approx.size()) throw std::invalid_argument("max_errors: length");
  ErrorStats s;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double e = std::abs(reference[i] - approx[i]);
    s.max_abs = std::max(s.max_abs, e);
    const double f = std::abs(reference[i]);
    if (f > 0.0) s.max_rel = std::max(s.max_rel, e / f);
  }
  return s;
}

namespace {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& v) {
  MeanStd r;
  if (v.empty()) return r;
  r.mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double s = 0.0;
  for (double x : v) s += (x - r.mean) * (x - r.mean);
  r.std = v.size() > 1 ? std::sqrt(s / (v.size() - 1)) : 0.0;
  return r;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Overflowed errors are reported as the largest double and flagged.
double clamp_error(double e, bool& overflow) {
  if (!std::isfinite(e)) {
    overflow = true;
    return std::numeric_limits<double>::max();
  }
  return e;
}

void check_spec(const ExperimentSpec& spec) {
  if (spec.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (spec.bandwidths.empty() || spec.kappas.empty() || spec.cutoffs.empty()) {
    throw std::invalid_argument("experiment parameter lists must be nonempty");
  }
}

struct Trial {
  BandlimitedCoefficients coeffs;
  SphericalPointSet points;
  CVector reference;
};

Trial make_trial(int B, std::size_t M, double kappa, std::uint64_t seed) {
  Trial t;
  t.coeffs = gen_coeffs(B, derive_seed(seed, 0));
  t.points = gen_points_ball(M, kappa, derive_seed(seed, 1));
  t.reference = ndsglft_naive(t.coeffs, t.points, Exec::serial);
  return t;
}

SglOptions serial_options(const ExperimentSpec& spec, int q) {
  SglOptions o;
  o.sigma = spec.sigma;
  o.q = q;
  o.grid = spec.grid;
  o.precision = spec.precision;
  o.exec = Exec::serial;
  return o;
}

// Repetitions run in parallel, each one serially inside, so results do not
// depend on the thread count.
template <typename F>
void for_each_repetition(int reps, F&& body) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (int r = 0; r < reps; ++r) body(r);
}

}  // namespace

CsvTable experiment_error_vs_q(const ExperimentSpec& spec) {
  check_spec(spec);
  const int B = spec.bandwidths.front();
  const double kappa = spec.kappas.front();
  const int reps = spec.repetitions;
  const std::size_t nq = spec.cutoffs.size();
  std::vector<std::vector<ErrorStats>> errs(reps, std::vector<ErrorStats>(nq));
  for_each_repetition(reps, [&](int r) {
    const Trial t = make_trial(B, spec.points, kappa, derive_seed(spec.seed, r));
    for (std::size_t iq = 0; iq < nq; ++iq) {
      const auto f = nfsglft_forward(t.coeffs, t.points, serial_options(spec, spec.cutoffs[iq]));
      errs[r][iq] = max_errors(t.reference, f);
    }
  });
  CsvTable table;
  table.kind = "error-vs-q";
  table.header = {"q", "avg_max_abs_err", "avg_max_rel_err", "std_abs", "std_rel"};
  for (std::size_t iq = 0; iq < nq; ++iq) {
    std::vector<double> a, rel;
    for (int r = 0; r < reps; ++r) {
      a.push_back(errs[r][iq].max_abs);
      rel.push_back(errs[r][iq].max_rel);
    }
    const auto sa = mean_std(a);
    const auto sr = mean_std(rel);
    table.rows.push_back({static_cast<double>(spec.cutoffs[iq]), sa.mean, sr.mean, sa.std, sr.std});
  }
  return table;
}

CsvTable experiment_error_vs_radius(const ExperimentSpec& spec) {
  check_spec(spec);
  const int B = spec.bandwidths.front();
  const int q = spec.cutoffs.front();
  const int reps = spec.repetitions;
  const std::size_t nk = spec.kappas.size();
  std::vector<std::vector<ErrorStats>> errs(reps, std::vector<ErrorStats>(nk));
  for_each_repetition(reps, [&](int r) {
    for (std::size_t ik = 0; ik < nk; ++ik) {
      const Trial t = make_trial(B, spec.points, spec.kappas[ik],
                                 derive_seed(derive_seed(spec.seed, r), ik));
      const auto f = nfsglft_forward(t.coeffs, t.points, serial_options(spec, q));
      errs[r][ik] = max_errors(t.reference, f);
    }
  });
  CsvTable table;
  table.kind = "error-vs-radius";
  table.header = {"kappa", "avg_max_abs_err", "avg_max_rel_err", "std_abs", "std_rel",
                  "overflow"};
  for (std::size_t ik = 0; ik < nk; ++ik) {
    bool overflow = false;
    std::vector<double> a, rel;
    for (int r = 0; r < reps; ++r) {
      a.push_back(clamp_error(errs[r][ik].max_abs, overflow));
      rel.push_back(clamp_error(errs[r][ik].max_rel, overflow));
    }
    auto sa = mean_std(a);
    auto sr = mean_std(rel);
    if (overflow) {
      sa = {std::numeric_limits<double>::max(), 0.0};
      sr = {std::numeric_limits<double>::max(), 0.0};
    }
    table.rows.push_back({spec.kappas[ik], sa.mean, sr.mean, sa.std, sr.std, overflow ? 1.0 : 0.0});
  }
  return table;
}

CsvTable experiment_error_vs_bandwidth(const ExperimentSpec& spec) {
  check_spec(spec);
  const double kappa = spec.kappas.front();
  const int q = spec.cutoffs.front();
  const int reps = spec.repetitions;
  const std::size_t nb = spec.bandwidths.size();
  std::vector<std::vector<ErrorStats>> errs(reps, std::vector<ErrorStats>(nb));
  std::vector<std::vector<ErrorStats>> exact(reps, std::vector<ErrorStats>(nb));
  for_each_repetition(reps, [&](int r) {
    for (std::size_t ib = 0; ib < nb; ++ib) {
      const int B = spec.bandwidths[ib];
      const Trial t = make_trial(B, spec.points, kappa, derive_seed(derive_seed(spec.seed, r), ib));
      errs[r][ib] = max_errors(t.reference, nfsglft_forward(t.coeffs, t.points, serial_options(spec, q)));
      if (spec.exact_column) {
        auto o = serial_options(spec, q);
        o.last_stage = LastStage::ndft;
        exact[r][ib] = max_errors(t.reference, nfsglft_forward(t.coeffs, t.points, o));
      }
    }
  });
  CsvTable table;
  table.kind = "error-vs-bandwidth";
  table.header = {"B", "avg_max_abs_err", "avg_max_rel_err", "std_abs", "std_rel",
                  "exact_avg_max_abs_err", "exact_avg_max_rel_err"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t ib = 0; ib < nb; ++ib) {
    std::vector<double> a, rel, ea, er;
    for (int r = 0; r < reps; ++r) {
      a.push_back(errs[r][ib].max_abs);
      rel.push_back(errs[r][ib].max_rel);
      ea.push_back(exact[r][ib].max_abs);
      er.push_back(exact[r][ib].max_rel);
    }
    const auto sa = mean_std(a);
    const auto sr = mean_std(rel);
    table.rows.push_back({static_cast<double>(spec.bandwidths[ib]), sa.mean, sr.mean, sa.std,
                          sr.std, spec.exact_column ? mean_std(ea).mean : nan,
                          spec.exact_column ? mean_std(er).mean : nan});
  }
  return table;
}

CsvTable experiment_runtime(const ExperimentSpec& spec) {
  check_spec(spec);
  const int B = spec.bandwidths.front();
  const double kappa = spec.kappas.front();
  const int q = spec.cutoffs.front();
  using clock = std::chrono::steady_clock;
  CsvTable table;
  table.kind = "runtime";
  table.header = {"M", "naive_mean_s", "naive_median_s", "fast_mean_s", "fast_median_s"};
  for (std::size_t im = 0; im < spec.point_counts.size(); ++im) {
    const std::size_t M = spec.point_counts[im];
    std::vector<double> tn, tf;
    for (int r = 0; r < spec.repetitions; ++r) {
      const auto seed = derive_seed(derive_seed(spec.seed, r), im);
      const auto coeffs = gen_coeffs(B, derive_seed(seed, 0));
      const auto points = gen_points_ball(M, kappa, derive_seed(seed, 1));
      const auto t0 = clock::now();
      const auto ref = ndsglft_naive(coeffs, points, Exec::parallel);
      const auto t1 = clock::now();
      auto o = serial_options(spec, q);
      o.exec = Exec::parallel;
      const auto f = nfsglft_forward(coeffs, points, o);
      const auto t2 = clock::now();
      tn.push_back(std::chrono::duration<double>(t1 - t0).count());
      tf.push_back(std::chrono::duration<double>(t2 - t1).count());
      if (ref.size() != f.size()) throw std::logic_error("runtime experiment: size mismatch");
    }
    table.rows.push_back({static_cast<double>(M), mean_std(tn).mean, median(tn),
                          mean_std(tf).mean, median(tf)});
  }
  return table;
}

CsvTable experiment_inverse(const ExperimentSpec& spec) {
  check_spec(spec);
  const int B = spec.bandwidths.front();
  CsvTable table;
  table.kind = "inverse-convergence";
  table.header = {"N", "kappa", "iteration", "max_abs_err", "max_rel_err", "residual",
                  "normal_residual"};
  for (int N : spec.grid_sizes) {
    for (double kappa : spec.kappas) {
      const auto points = gen_grid(N, kappa);
      const auto truth = gen_coeffs(B, spec.seed);
      const auto values = ndsglft_naive(truth, points, Exec::parallel);
      InverseOptions opt;
      opt.bandwidth = B;
      opt.op = spec.inverse_operator;
      opt.sgl.sigma = spec.sigma;
      opt.sgl.q = spec.cutoffs.front();
      opt.sgl.grid = spec.grid;
      opt.sgl.precision = spec.precision;
      opt.solver = SolverChoice::cgnr;
      opt.x0 = InitialGuess::midpoint;
      opt.midpoint = spec.midpoint;
      opt.grid_n = N;
      opt.kappa = kappa;
      opt.solve.max_iter = spec.max_iter;
      opt.solve.tol = spec.tol;
      opt.solve.precision = spec.precision;
      opt.solve.ground_truth = truth.data;
      const auto report = infsglft(points, values, opt);
      for (std::size_t it = 0; it < report.max_abs_error.size(); ++it) {
        table.rows.push_back({static_cast<double>(N), kappa, static_cast<double>(it),
                              report.max_abs_error[it], report.max_rel_error[it],
                              report.residual_history[it], report.normal_residual_history[it]});
      }
    }
  }
  return table;
}

}  // namespace sglnufft
