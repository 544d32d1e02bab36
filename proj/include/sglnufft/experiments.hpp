#pragma once

// Seeded data generators, CSV I/O and the experiment drivers behind the CLI.
//
// Random numbers come from std::mt19937_64, whose output sequence is fixed by
// the C++ standard; doubles are formed from the top 53 bits, so a seed gives
// the same data on every platform.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "sglnufft/inverse.hpp"
#include "sglnufft/sgl_transform.hpp"

namespace sglnufft {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Independent seed for stream `index` of a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

BandlimitedCoefficients gen_coeffs(int bandwidth, std::uint64_t seed);
SphericalPointSet gen_points_ball(std::size_t count, double kappa, std::uint64_t seed);
/// Cartesian grid kappa * (2j/N - 1, 2k/N - 1, 2l/N - 1), j fastest.
SphericalPointSet gen_grid(int n, double kappa);

// CSV files start with a "# sglnufft <kind> v1" line and a header row.
inline constexpr const char* kCsvSchemaVersion = "v1";

void write_coefficients_csv(std::ostream& out, const BandlimitedCoefficients& coeffs);
BandlimitedCoefficients read_coefficients_csv(std::istream& in);
void write_points_csv(std::ostream& out, const SphericalPointSet& points);
SphericalPointSet read_points_csv(std::istream& in);
void write_values_csv(std::ostream& out, const CVector& values);
CVector read_values_csv(std::istream& in);

/// Shortest round-trip decimal form.
std::string format_double(double v);

struct CsvTable {
  std::string kind;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  void write(std::ostream& out) const;
  std::size_t column(const std::string& name) const;
};

struct ErrorStats {
  double max_abs = 0.0;
  double max_rel = 0.0;
};

/// max_i |f_i - g_i| and max_i |f_i - g_i| / |f_i|.
ErrorStats max_errors(const CVector& reference, const CVector& approx);

struct ExperimentSpec {
  std::vector<int> bandwidths{8};
  std::size_t points = 1000;
  std::vector<std::size_t> point_counts{10, 100, 1000};
  std::vector<double> kappas{5.0};
  std::vector<int> cutoffs{16};
  double sigma = 2.0;
  int repetitions = 10;
  std::uint64_t seed = 1;
  GridChoice grid = GridChoice::support;
  bool exact_column = false;  // error-vs-bandwidth: add the NDFT control
  // inverse-convergence
  std::vector<int> grid_sizes{25};
  int max_iter = 200;
  double tol = 0.0;
  OperatorKind inverse_operator = OperatorKind::dense;
  MidpointWeight midpoint = MidpointWeight::riemann;
  Precision precision = Precision::standard;
};

CsvTable experiment_error_vs_q(const ExperimentSpec& spec);
CsvTable experiment_error_vs_radius(const ExperimentSpec& spec);
CsvTable experiment_error_vs_bandwidth(const ExperimentSpec& spec);
CsvTable experiment_runtime(const ExperimentSpec& spec);
CsvTable experiment_inverse(const ExperimentSpec& spec);

}  // namespace sglnufft
