#include "twocolor/banded.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include "twocolor/error.hpp"

namespace twocolor {

BandedOperator::BandedOperator(int dim, int half_bandwidth)
    : dim_(dim), bw_(half_bandwidth) {
  if (dim < 0 || half_bandwidth < 0) {
    throw InvalidParameter("band matrix dimensions must be nonnegative");
  }
  bw_ = std::min(bw_, std::max(dim - 1, 0));
  data_.assign(static_cast<std::size_t>(bw_ + 1) * dim_, 0.0);
}

BandedOperator BandedOperator::identity(int dim) {
  BandedOperator op(dim, 0);
  std::fill(op.data_.begin(), op.data_.end(), 1.0);
  return op;
}

BandedOperator BandedOperator::diagonal(std::span<const double> values) {
  BandedOperator op(static_cast<int>(values.size()), 0);
  std::copy(values.begin(), values.end(), op.data_.begin());
  return op;
}

double BandedOperator::operator()(int i, int j) const {
  if (i > j) std::swap(i, j);
  const int d = j - i;
  if (i < 0 || j >= dim_) throw InvalidParameter("band matrix index out of range");
  if (d > bw_) return 0.0;
  return data_[static_cast<std::size_t>(d) * dim_ + i];
}

void BandedOperator::set(int i, int j, double value) {
  if (i > j) std::swap(i, j);
  const int d = j - i;
  if (i < 0 || j >= dim_ || d > bw_) {
    throw InvalidParameter("band matrix element outside storage");
  }
  data_[static_cast<std::size_t>(d) * dim_ + i] = value;
}

std::span<const double> BandedOperator::band(int d) const {
  return {data_.data() + static_cast<std::size_t>(d) * dim_, static_cast<std::size_t>(dim_ - d)};
}

std::span<double> BandedOperator::band(int d) {
  return {data_.data() + static_cast<std::size_t>(d) * dim_, static_cast<std::size_t>(dim_ - d)};
}

void BandedOperator::apply(std::span<const std::complex<double>> x,
                           std::span<std::complex<double>> y) const {
  const int n = dim_;
  const double* diag = data_.data();
  for (int i = 0; i < n; ++i) y[i] = diag[i] * x[i];
  for (int d = 1; d <= bw_; ++d) {
    const double* b = data_.data() + static_cast<std::size_t>(d) * n;
    for (int i = 0; i + d < n; ++i) {
      y[i] += b[i] * x[i + d];
      y[i + d] += b[i] * x[i];
    }
  }
}

void BandedOperator::add_scaled(double scale, const BandedOperator& other) {
  if (other.dim_ != dim_ || other.bw_ > bw_) {
    throw InvalidParameter("incompatible band matrices in add_scaled");
  }
  const std::size_t count = static_cast<std::size_t>(other.bw_ + 1) * dim_;
  for (std::size_t k = 0; k < count; ++k) data_[k] += scale * other.data_[k];
}

BandedOperator BandedOperator::truncated(int dim) const {
  if (dim > dim_) throw InvalidParameter("cannot truncate to a larger dimension");
  BandedOperator out(dim, bw_);
  for (int d = 0; d <= out.bw_; ++d) {
    auto src = band(d);
    auto dst = out.band(d);
    std::copy(src.begin(), src.begin() + dst.size(), dst.begin());
  }
  return out;
}

BandedOperator BandedOperator::widened(int half_bandwidth) const {
  BandedOperator out(dim_, std::max(half_bandwidth, bw_));
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  return out;
}

Eigen::MatrixXd BandedOperator::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int d = 0; d <= bw_; ++d) {
    auto b = band(d);
    for (int i = 0; i + d < dim_; ++i) {
      m(i, i + d) = b[i];
      m(i + d, i) = b[i];
    }
  }
  return m;
}

void BandedOperator::write_text(std::ostream& os) const {
  os << dim_ << ' ' << bw_ << '\n';
  const auto old_precision = os.precision(17);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      if (j) os << ' ';
      os << (*this)(i, j);
    }
    os << '\n';
  }
  os.precision(old_precision);
}

BandedOperator matrix_power(const BandedOperator& a, int k) {
  if (k < 0) throw InvalidParameter("matrix power must be nonnegative");
  const int n = a.dim();
  if (k == 0) return BandedOperator::identity(n);
  BandedOperator result = a;
  for (int p = 1; p < k; ++p) {
    const int bw = result.half_bandwidth() + a.half_bandwidth();
    BandedOperator next(n, bw);
    const int wa = result.half_bandwidth();
    const int wb = a.half_bandwidth();
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < std::min(n, i + next.half_bandwidth() + 1); ++j) {
        double sum = 0.0;
        const int lo = std::max({0, i - wa, j - wb});
        const int hi = std::min({n - 1, i + wa, j + wb});
        for (int l = lo; l <= hi; ++l) sum += result(i, l) * a(l, j);
        next.set(i, j, sum);
      }
    }
    result = std::move(next);
  }
  return result;
}

}  // namespace twocolor
