#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lforge/ideal_ops.hpp"

namespace lforge {

/// A link could not be formed (containment, complete intersection or degree checks).
class LinkError : public std::runtime_error {
 public:
  LinkError(const std::string& what, std::string trace)
      : std::runtime_error(what), trace(std::move(trace)) {}
  std::string trace;
};

template <class F>
struct LinkStep {
  std::vector<int> ci_degrees;
  Ideal<F> ci;
  Ideal<F> input;
  Ideal<F> residual;
  int dim_in = -1, dim_ci = -1, dim_out = -1;
  long long deg_in = 0, deg_ci = 0, deg_out = 0;
  /// Unmixedness of the input is assumed, never checked.
  bool input_unmixed_assumed = true;

  std::string summary() const;
};

struct LiaisonAudit {
  bool containment = false;
  bool complete_intersection = false;
  bool degree_additive = false;
  bool dims_equal = false;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Residual of I in the complete intersection ci, i.e. ci : I, with all bookkeeping asserted.
template <class F>
LinkStep<F> link(const Ideal<F>& I, const Ideal<F>& ci);

/// Re-check a step; never throws.
template <class F>
LiaisonAudit liaison_invariants(const LinkStep<F>& step);

template <class F>
struct BilinkReport {
  std::vector<LinkStep<F>> steps;
  Ideal<F> final;
  std::vector<std::uint64_t> seeds;  // one per random draw that was kept
  int redraws = 0;
  /// Degree of the hypersurface used in step 2 and the slice dimensions at that degree.
  int next_degree = 0;
  long long h0_intermediate_next = 0;  // h^0(I_{F}(next_degree))
  long long h0_union_next = 0;         // h^0(I_{CI}(next_degree)) = h^0(I_{D ∪ F}(next_degree))
  bool degree_checks = false;
  bool dim_checks = false;
  std::vector<std::string> log;
};

/**
 * Links I_D through (c1, c2, g_k) with g_k a seeded element of I_D in degree
 * k, then links the residual F_k through (c1, c2, g_{k+1}) with g_{k+1} a
 * seeded element of I_{F_k}. Draws failing a degree or dimension check are
 * repeated (at most 5 times per step).
 */
template <class F>
BilinkReport<F> bilink_degree18(const Ideal<F>& I_D, const MPoly<F>& c1, const MPoly<F>& c2, int k, std::uint64_t seed);

/**
 * Links T through three cubics to G, picks a seeded quartic containing G but
 * not T, and links G through the first two cubics and that quartic.
 */
template <class F>
BilinkReport<F> bilink_t8(const Ideal<F>& I_T, const std::vector<MPoly<F>>& cubics, std::uint64_t seed);

/// Product of the degrees of the generators.
template <class F>
long long ci_degree_product(const Ideal<F>& ci);

}  // namespace lforge
