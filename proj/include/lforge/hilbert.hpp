#pragma once

#include <vector>

#include <gmpxx.h>

#include "lforge/monomial.hpp"

namespace lforge {

/**
 * Hilbert series of R/I written as numerator(t) / (1-t)^n.
 *
 * `reduced` is the numerator with every cancellable factor (1-t) removed;
 * `krull_dim` is n minus the number removed. The unit ideal has an empty
 * numerator and krull_dim 0.
 */
struct HilbertData {
  std::vector<long long> numerator;
  std::size_t nvars = 0;
  std::vector<long long> reduced;
  int krull_dim = 0;
  long long degree = 0;

  /// Projective dimension; -1 for the empty scheme.
  int dim() const { return krull_dim - 1; }
  bool is_unit() const { return numerator.empty(); }

  long long hilbert_function(long long d) const;
  long long hilbert_polynomial(long long k) const;
  /// First degree from which the Hilbert function agrees with the polynomial.
  long long regularity_index() const;
  bool same_polynomial(const HilbertData& o) const;
  bool operator==(const HilbertData& o) const { return nvars == o.nvars && numerator == o.numerator; }
};

HilbertData hilbert_from_monomials(const std::vector<Monomial>& gens, std::size_t nvars);

/// Integer polynomial helpers, low degree first.
std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b);
std::vector<long long> poly_add(const std::vector<long long>& a, const std::vector<long long>& b);

/// C(a, r) for any integer a and r >= 0, as a polynomial in a.
mpz_class binomial_poly(long long a, long long r);

}  // namespace lforge
