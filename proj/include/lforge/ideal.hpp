#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lforge/groebner.hpp"
#include "lforge/hilbert.hpp"

namespace lforge {

/// Raised for operations that need homogeneous input.
class NotHomogeneous : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Generator list with lazily computed, shared reduced Gröbner basis and
 * Hilbert data. Copies share the cache; ideals are never mutated.
 */
template <class F>
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr<F> ring, std::vector<MPoly<F>> gens, GBOptions opt = {});

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<MPoly<F>>& gens() const { return gens_; }
  const GBOptions& options() const { return opt_; }
  Ideal with_options(GBOptions opt) const { return Ideal(ring_, gens_, std::move(opt)); }

  bool is_homogeneous() const { return homogeneous_; }
  bool is_zero() const { return gens_.empty(); }

  const GroebnerBasis<F>& gb() const;
  /// Requires homogeneous generators.
  const HilbertData& hilbert() const;
  /// (projective dimension, degree); dimension -1 means the empty scheme.
  std::pair<int, long long> dim_degree() const {
    const auto& h = hilbert();
    return {h.dim(), h.degree};
  }

  bool is_unit() const;
  bool contains(const MPoly<F>& f) const;
  bool contains(const Ideal& J) const;
  /// Same ideal (equal reduced bases).
  bool equals(const Ideal& J) const;

  /// dim_k I_e.
  long long graded_piece_dim(int e) const;
  /// Basis of I_e: m - NF(m) for every leading monomial m of degree e.
  std::vector<MPoly<F>> basis_in_degree(int e) const;

  Ideal operator+(const Ideal& J) const;
  Ideal operator*(const Ideal& J) const;
  Ideal plus(const std::vector<MPoly<F>>& more) const;

  std::string to_text(const std::string& name = "R") const;

 private:
  struct Cache {
    std::mutex mu;
    std::optional<GroebnerBasis<F>> gb;
    std::optional<HilbertData> hilbert;
  };
  RingPtr<F> ring_;
  std::vector<MPoly<F>> gens_;
  GBOptions opt_;
  bool homogeneous_ = true;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Exact multivariate division; throws ArithmeticError when g does not divide f.
template <class F>
MPoly<F> divide_exact(const MPoly<F>& f, const MPoly<F>& g);

}  // namespace lforge
