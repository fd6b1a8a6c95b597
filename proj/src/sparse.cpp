#include "omega/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "omega/error.hpp"

namespace omega {

double dot(std::span<const double> a, std::span<const double> b) {
  // Four independent partial sums let the compiler vectorize without
  // reassociation flags; the summation order is fixed, so results stay
  // reproducible.
  const std::size_t n = a.size();
  const std::size_t blocked = n - n % 4;
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (std::size_t i = 0; i < blocked; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (std::size_t i = blocked; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void matvec(const SparseSymmetricMatrix& a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = a.dimension();
  if (x.size() != n || y.size() != n) {
    throw std::invalid_argument("matvec: dimension mismatch (matrix " + std::to_string(n) +
                                ", vector " + std::to_string(x.size()) + ")");
  }
  const auto offsets = a.row_offsets();
  const auto cols = a.column_indices();
  const auto vals = a.values();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) s += vals[k] * x[cols[k]];
    y[i] = s;
  }
}

std::vector<double> matvec(const SparseSymmetricMatrix& a, std::span<const double> x) {
  std::vector<double> y(a.dimension());
  matvec(a, x, y);
  return y;
}

CholeskyFactor::CholeskyFactor(std::size_t n, std::vector<std::size_t> row_offsets,
                               std::vector<std::size_t> column_indices,
                               std::vector<double> values, double diagonal_shift)
    : n_(n),
      row_offsets_(std::move(row_offsets)),
      column_indices_(std::move(column_indices)),
      values_(std::move(values)),
      diagonal_shift_(diagonal_shift) {}

double CholeskyFactor::operator()(std::size_t i, std::size_t j) const {
  const auto cols = row_columns(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

namespace {

constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

// Returns nullopt on a non-positive pivot.
std::optional<CholeskyFactor> try_ic0(const SparseSymmetricMatrix& a, double shift) {
  const std::size_t n = a.dimension();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row_cols = a.row_columns(i);
    const auto row_vals = a.row_values(i);
    bool has_diagonal = false;
    for (std::size_t k = 0; k < row_cols.size() && row_cols[k] <= i; ++k) {
      cols.push_back(row_cols[k]);
      vals.push_back(row_vals[k]);
      has_diagonal = has_diagonal || row_cols[k] == i;
    }
    if (!has_diagonal) return std::nullopt;  // zero diagonal cannot be a valid pivot
    offsets[i + 1] = cols.size();
  }

  std::vector<std::size_t> position(n, kAbsent);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t begin = offsets[i];
    const std::size_t diag = offsets[i + 1] - 1;
    vals[diag] += shift * vals[diag];
    for (std::size_t p = begin; p < diag; ++p) position[cols[p]] = p;

    for (std::size_t p = begin; p < diag; ++p) {
      const std::size_t k = cols[p];
      double s = vals[p];
      // Subtract sum_{j<k} L_ij L_kj over the shared pattern.
      for (std::size_t q = offsets[k]; q + 1 < offsets[k + 1]; ++q) {
        const std::size_t at = position[cols[q]];
        if (at != kAbsent && at < p) s -= vals[at] * vals[q];
      }
      vals[p] = s / vals[offsets[k + 1] - 1];
    }
    double d = vals[diag];
    for (std::size_t p = begin; p < diag; ++p) d -= vals[p] * vals[p];
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    vals[diag] = std::sqrt(d);

    for (std::size_t p = begin; p < diag; ++p) position[cols[p]] = kAbsent;
  }
  return CholeskyFactor(n, std::move(offsets), std::move(cols), std::move(vals), shift);
}

}  // namespace

CholeskyFactor incomplete_cholesky(const SparseSymmetricMatrix& a) {
  if (auto factor = try_ic0(a, 0.0)) return std::move(*factor);
  double beta = 1e-3;
  for (int attempt = 0; attempt <= 8; ++attempt, beta *= 2.0) {
    if (auto factor = try_ic0(a, beta)) return std::move(*factor);
  }
  throw NumericalError("incomplete Cholesky: non-positive pivot persists after diagonal shift");
}

std::vector<double> precond_solve(const CholeskyFactor& k, std::span<const double> r) {
  const std::size_t n = k.dimension();
  if (r.size() != n) throw std::invalid_argument("precond_solve: dimension mismatch");
  std::vector<double> z(r.begin(), r.end());
  // Forward: K_L y = r.
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = k.row_columns(i);
    const auto vals = k.row_values(i);
    double s = z[i];
    for (std::size_t p = 0; p + 1 < cols.size(); ++p) s -= vals[p] * z[cols[p]];
    z[i] = s / vals.back();
  }
  // Backward: K_L^T z = y, column-oriented over the stored rows.
  for (std::size_t i = n; i-- > 0;) {
    const auto cols = k.row_columns(i);
    const auto vals = k.row_values(i);
    z[i] /= vals.back();
    for (std::size_t p = 0; p + 1 < cols.size(); ++p) z[cols[p]] -= vals[p] * z[i];
  }
  return z;
}

PcgResult pcg_solve(const SparseSymmetricMatrix& a, std::span<const double> b,
                    const CholeskyFactor& k, const PcgParams& params,
                    const PcgObserver& observer) {
  const std::size_t n = a.dimension();
  if (b.size() != n || k.dimension() != n) {
    throw std::invalid_argument("pcg_solve: dimension mismatch");
  }
  if (!(params.tolerance > 0.0) || params.max_iterations == 0) {
    throw std::invalid_argument("pcg_solve: tolerance must be positive and max_iterations >= 1");
  }
  PcgResult result;
  result.x.assign(n, 0.0);
  std::vector<double> r(b.begin(), b.end());
  std::vector<double> z = precond_solve(k, r);
  std::vector<double> p = z;
  std::vector<double> q(n);
  double rho_old = dot(r, z);
  result.rho = rho_old;
  if (rho_old == 0.0) {
    result.converged = true;  // b = 0
    return result;
  }

  const double threshold = params.tolerance * params.tolerance;
  for (std::size_t iter = 1; iter <= params.max_iterations; ++iter) {
    matvec(a, p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) {
      throw NumericalError("pcg_solve: breakdown, p^T A p = " + std::to_string(pq) +
                           " at iteration " + std::to_string(iter));
    }
    const double alpha = rho_old / pq;
    for (std::size_t i = 0; i < n; ++i) {
      result.x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    z = precond_solve(k, r);
    const double rho_new = dot(r, z);
    result.iterations = iter;
    result.rho = rho_new;
    if (observer) observer(iter, result.x);
    if (rho_new < threshold) {
      result.converged = true;
      break;
    }
    const double beta = rho_new / rho_old;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rho_old = rho_new;
  }
  return result;
}

}  // namespace omega
