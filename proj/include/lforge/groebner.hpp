#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lforge/mpoly.hpp"

namespace lforge {

/// A resource limit was hit; `diagnostics` describes the partial state.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::string diag)
      : std::runtime_error(what + " (" + diag + ")"), diagnostics(std::move(diag)) {}
  std::string diagnostics;
};

/// Raised when a structure that must be a reduced basis is not.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct GBOptions {
  /// Grading used for sugar; empty means standard degree.
  std::vector<unsigned> weights;
  /// Skip pairs of sugar above this; the result is then a truncated basis.
  std::optional<int> degree_cap;
  std::size_t max_pairs = 0;  // 0 = unlimited
  std::size_t max_basis = 0;
  double max_seconds = 0;
};

struct GBStats {
  std::size_t pairs_total = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t max_sugar = 0;
  double seconds = 0;
};

template <class F>
struct GroebnerBasis {
  RingPtr<F> ring;
  std::vector<MPoly<F>> basis;  // monic, ascending by leading monomial
  bool reduced = true;
  std::optional<int> truncated_at;
  std::uint64_t source_hash = 0;
  GBStats stats;
};

template <class F>
GroebnerBasis<F> buchberger(const std::vector<MPoly<F>>& gens, const GBOptions& opt = {});

/// Full normal form of f with respect to the list G (any generating set; not necessarily monic).
template <class F>
MPoly<F> normal_form(const MPoly<F>& f, const std::vector<MPoly<F>>& G);

/// Minimal generators of the leading-term ideal; throws InvariantViolation when G is not reduced.
template <class F>
std::vector<Monomial> lt_ideal(const GroebnerBasis<F>& G);

/// Drop generators divisible by another one; result sorted by degree then exponents.
std::vector<Monomial> minimalize_monomials(std::vector<Monomial> gens);

/// Every S-polynomial of G reduces to 0 and G is self-reduced.
template <class F>
bool spair_audit(const GroebnerBasis<F>& G);

/// Order-independent content hash of a generator list (ring header included).
template <class F>
std::uint64_t content_hash(const std::vector<MPoly<F>>& gens);

/**
 * Disk cache of Gröbner bases keyed by (generator hash, order, field).
 * Directory from LFORGE_CACHE unless given; an empty directory disables it.
 */
class GBCache {
 public:
  explicit GBCache(std::string dir);
  static GBCache from_env();
  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }

  template <class F>
  std::optional<GroebnerBasis<F>> load(const RingPtr<F>& ring, std::uint64_t key) const;
  template <class F>
  void store(const GroebnerBasis<F>& G) const;

 private:
  std::string path_for(const std::string& ring_header, std::uint64_t key) const;
  std::string dir_;
};

/// buchberger() with the process-wide cache consulted first.
template <class F>
GroebnerBasis<F> cached_groebner(const std::vector<MPoly<F>>& gens, const GBOptions& opt = {});

}  // namespace lforge
