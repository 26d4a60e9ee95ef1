#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string_view>
#include <vector>

#include "factornorm/sets.hpp"

namespace factornorm {

/// p(z) = prod_k (z - z_k). The leading coefficient is 1 by construction and
/// is never stored; degree equals the number of roots (with multiplicity).
class MonicPolynomial {
 public:
  MonicPolynomial() = default;
  explicit MonicPolynomial(std::vector<Complex> roots) : roots_(std::move(roots)) {}

  std::span<const Complex> roots() const { return roots_; }
  std::size_t degree() const { return roots_.size(); }

 private:
  std::vector<Complex> roots_;
};

/// prod_k (z - z_k); 1 for the empty product. Overflows for large degree;
/// use log_abs_evaluate there.
Complex evaluate(const MonicPolynomial& p, Complex z);

/// sum_k log|z - z_k|; -infinity when z is a root.
double log_abs_evaluate(const MonicPolynomial& p, Complex z);

struct NormEstimate {
  double log_value = 0.0;   // log of the sup norm
  Complex argmax{};
  double relative_error = 0.0;  // bound from the final refinement brackets
  double value() const;
};

/// Sup norm of p over E, computed in the log domain on the boundary
/// (maximum principle): a scan with max(64, 8 deg p) samples per boundary
/// piece, then golden-section refinement of every sampled local maximum
/// within a factor e of the largest sample. Throws NumericalError when a
/// refinement stalls above `tol`.
NormEstimate sup_norm_estimate(const MonicPolynomial& p, const CompactSet& set,
                               double tol);

/// exp(sup_norm_estimate(...).log_value).
double sup_norm(const MonicPolynomial& p, const CompactSet& set, double tol);

/// Monic Chebyshev polynomial of [-a, a]: roots a cos((2k-1)pi/(2n)).
MonicPolynomial monic_chebyshev(int n, double a);

/// The monic factor whose roots are the roots of p satisfying `keep`.
template <typename Predicate>
MonicPolynomial factor_by_predicate(const MonicPolynomial& p, Predicate keep) {
  std::vector<Complex> kept;
  for (const Complex& z : p.roots()) {
    if (keep(z)) kept.push_back(z);
  }
  return MonicPolynomial(std::move(kept));
}

/// Root-list text: one root per line as `re im`. '#' lines are comments.
MonicPolynomial read_roots(std::istream& in);

/// `@<path>` (root-list file) or `chebyshev:n=<int>` on [-a, a].
MonicPolynomial parse_polynomial_spec(std::string_view text, double a);

}  // namespace factornorm
