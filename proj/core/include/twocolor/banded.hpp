#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace twocolor {

// Real symmetric band matrix. Only the diagonal and the upper bands are
// stored, so element (i, j) and (j, i) are the same number.
class BandedOperator {
 public:
  BandedOperator() = default;
  BandedOperator(int dim, int half_bandwidth);

  static BandedOperator identity(int dim);
  static BandedOperator diagonal(std::span<const double> values);

  int dim() const { return dim_; }
  int half_bandwidth() const { return bw_; }

  // Element access; zero outside the band.
  double operator()(int i, int j) const;
  // Sets (i, j) and (j, i).
  void set(int i, int j, double value);

  // Upper band d: entries (i, i + d) for i in [0, dim - d).
  std::span<const double> band(int d) const;
  std::span<double> band(int d);

  // y = A x.
  void apply(std::span<const std::complex<double>> x, std::span<std::complex<double>> y) const;

  // this += scale * other; other's bandwidth must not exceed this one's.
  void add_scaled(double scale, const BandedOperator& other);

  // Leading dim x dim block.
  BandedOperator truncated(int dim) const;

  // Same matrix with a wider band (new bands zero).
  BandedOperator widened(int half_bandwidth) const;

  Eigen::MatrixXd to_dense() const;

  // Plain-text dump: header line "dim bw", then the dense matrix row by row.
  void write_text(std::ostream& os) const;

 private:
  int dim_ = 0;
  int bw_ = 0;
  std::vector<double> data_;  // band d starts at d * dim_
};

// a^k for a symmetric band matrix a; the result has half-bandwidth k * bw.
BandedOperator matrix_power(const BandedOperator& a, int k);

}  // namespace twocolor
