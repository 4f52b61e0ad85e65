#include "lforge/groebner.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "lforge/parse.hpp"

namespace lforge {

namespace {

struct MonoHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

unsigned wdeg(const Monomial& m, const std::vector<unsigned>& w, std::size_t n) {
  if (w.empty()) return m.degree();
  unsigned d = 0;
  for (std::size_t i = 0; i < n; ++i) d += (i < w.size() ? w[i] : 1) * m[i];
  return d;
}

/// Full reduction of a term list by monic reducers, using a hash accumulator and a max-heap.
template <class F>
class Reducer {
 public:
  using Elem = typename F::Elem;
  explicit Reducer(const Ring<F>& R) : R_(R), K_(R.field()) {}

  /// Reducers are (poly, active) pairs; only active monic polys are used.
  std::vector<Term<F>> reduce(const std::vector<Term<F>>& f, const std::vector<const MPoly<F>*>& G,
                              bool skip_lead = false) {
    auto cmp = [this](const Monomial& a, const Monomial& b) { return R_.compare(a, b) < 0; };
    std::priority_queue<Monomial, std::vector<Monomial>, decltype(cmp)> heap(cmp);
    std::unordered_map<Monomial, Elem, MonoHash> acc;
    acc.reserve(f.size() * 4 + 16);
    std::vector<Term<F>> out;
    std::size_t start = 0;
    if (skip_lead && !f.empty()) {
      out.push_back(f[0]);
      start = 1;
    }
    for (std::size_t i = start; i < f.size(); ++i) {
      acc.emplace(f[i].m, f[i].c);
      heap.push(f[i].m);
    }
    while (!heap.empty()) {
      Monomial m = heap.top();
      heap.pop();
      auto it = acc.find(m);
      Elem c = it->second;
      acc.erase(it);
      if (K_.is_zero(c)) continue;
      const MPoly<F>* g = nullptr;
      for (auto* cand : G)
        if (cand->lm().divides(m)) {
          g = cand;
          break;
        }
      if (!g) {
        out.push_back({m, c});
        continue;
      }
      Monomial q = m / g->lm();
      Elem nc = K_.neg(c);
      const auto& gt = g->terms();
      for (std::size_t k = 1; k < gt.size(); ++k) {
        Monomial mm = gt[k].m * q;
        Elem v = K_.mul(nc, gt[k].c);
        auto [pos, fresh] = acc.try_emplace(mm, v);
        if (fresh)
          heap.push(mm);
        else
          pos->second = K_.add(pos->second, v);
      }
    }
    return out;
  }

 private:
  const Ring<F>& R_;
  const F& K_;
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  unsigned sugar;
};

template <class F>
std::string gb_diag(std::size_t pairs, std::size_t basis, std::size_t queue, unsigned sugar) {
  return "pairs processed " + std::to_string(pairs) + ", basis size " + std::to_string(basis) + ", pairs queued " +
         std::to_string(queue) + ", current sugar " + std::to_string(sugar);
}

template <class F>
std::vector<MPoly<F>> interreduce(std::vector<MPoly<F>> polys, const Ring<F>& R) {
  std::sort(polys.begin(), polys.end(), [&](const MPoly<F>& a, const MPoly<F>& b) { return R.compare(a.lm(), b.lm()) < 0; });
  std::vector<MPoly<F>> minimal;
  for (auto& p : polys) {
    bool redundant = false;
    for (auto& q : minimal)
      if (q.lm().divides(p.lm())) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(std::move(p));
  }
  Reducer<F> red(R);
  std::vector<MPoly<F>> out;
  out.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const MPoly<F>*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    auto terms = red.reduce(minimal[i].terms(), others, true);
    out.push_back(MPoly<F>::from_sorted(minimal[i].ring(), std::move(terms)));
  }
  return out;
}

}  // namespace

std::vector<Monomial> minimalize_monomials(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  });
  std::vector<Monomial> out;
  for (auto& m : gens) {
    bool redundant = false;
    for (auto& o : out)
      if (o.divides(m)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(m);
  }
  return out;
}

template <class F>
std::uint64_t content_hash(const std::vector<MPoly<F>>& gens) {
  std::vector<std::string> parts;
  for (auto& g : gens) parts.push_back(g.to_string());
  std::sort(parts.begin(), parts.end());
  std::string blob = gens.empty() ? std::string() : gens.front().ring()->header();
  for (auto& p : parts) blob += "\n" + p;
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : blob) h = (h ^ c) * 1099511628211ull;
  return h;
}

template <class F>
GroebnerBasis<F> buchberger(const std::vector<MPoly<F>>& gens, const GBOptions& opt) {
  if (gens.empty()) throw ConstructionError("buchberger needs at least one generator");
  auto ring = gens.front().ring();
  for (auto& g : gens) g.check_ring(gens.front());
  const Ring<F>& R = *ring;
  const std::size_t n = R.nvars();
  const auto t0 = std::chrono::steady_clock::now();

  GroebnerBasis<F> result;
  result.ring = ring;
  result.source_hash = content_hash(gens);

  std::vector<MPoly<F>> polys;
  std::vector<unsigned> sugar;
  std::vector<bool> active;
  std::vector<Pair> pairs;
  Reducer<F> red(R);

  auto poly_sugar = [&](const MPoly<F>& p) {
    unsigned s = 0;
    for (auto& t : p.terms()) s = std::max(s, wdeg(t.m, opt.weights, n));
    return s;
  };

  auto pair_less = [&](const Pair& a, const Pair& b) {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = R.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  };

  // Gebauer–Möller update with new element index h.
  auto update = [&](std::size_t h) {
    const Monomial& lh = polys[h].lm();
    std::vector<Pair> C;
    for (std::size_t g = 0; g < h; ++g) {
      if (!active[g]) continue;
      Monomial l = lh.lcm(polys[g].lm());
      unsigned s = std::max(sugar[h] + wdeg(l, opt.weights, n) - wdeg(lh, opt.weights, n),
                            sugar[g] + wdeg(l, opt.weights, n) - wdeg(polys[g].lm(), opt.weights, n));
      C.push_back({g, h, l, s});
    }
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      bool coprime = lh.coprime(polys[C[a].i].lm());
      bool keep = true;
      if (!coprime) {
        for (std::size_t b = 0; b < C.size() && keep; ++b) {
          if (b == a) continue;
          if (C[b].lcm.divides(C[a].lcm)) {
            // strict divisibility, or equal lcm with the earlier index winning
            if (!(C[b].lcm == C[a].lcm) || b < a) {
              // only skip against pairs that are themselves kept or still pending
              keep = false;
            }
          }
        }
      }
      if (keep) D.push_back(C[a]);
    }
    // product criterion
    std::vector<Pair> E;
    for (auto& p : D)
      if (!lh.coprime(polys[p.i].lm())) E.push_back(p);
    // old pairs
    std::vector<Pair> B;
    for (auto& p : pairs) {
      bool drop = lh.divides(p.lcm) && !(lh.lcm(polys[p.i].lm()) == p.lcm) && !(lh.lcm(polys[p.j].lm()) == p.lcm);
      if (!drop) B.push_back(p);
    }
    for (auto& p : E) B.push_back(p);
    pairs = std::move(B);
    for (std::size_t g = 0; g < h; ++g)
      if (active[g] && lh.divides(polys[g].lm())) active[g] = false;
  };

  auto add = [&](MPoly<F> p, unsigned s) {
    polys.push_back(p.monic());
    sugar.push_back(s);
    active.push_back(true);
    update(polys.size() - 1);
  };

  auto active_list = [&]() {
    std::vector<const MPoly<F>*> v;
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (active[i]) v.push_back(&polys[i]);
    return v;
  };

  // seed with generators in ascending order so that early reductions are cheap
  std::vector<MPoly<F>> sorted;
  for (auto& g : gens)
    if (!g.is_zero()) sorted.push_back(g);
  std::sort(sorted.begin(), sorted.end(), [&](const MPoly<F>& a, const MPoly<F>& b) {
    unsigned sa = poly_sugar(a), sb = poly_sugar(b);
    if (sa != sb) return sa < sb;
    return R.compare(a.lm(), b.lm()) < 0;
  });
  for (auto& g : sorted) {
    if (opt.degree_cap && static_cast<int>(poly_sugar(g)) > *opt.degree_cap) {
      result.truncated_at = *opt.degree_cap;
      continue;
    }
    auto terms = red.reduce(g.terms(), active_list());
    if (terms.empty()) continue;
    auto p = MPoly<F>::from_sorted(ring, std::move(terms));
    add(p, poly_sugar(g));
  }

  GBStats& st = result.stats;
  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
    Pair pr = *it;
    pairs.erase(it);
    ++st.pairs_total;
    if (opt.degree_cap && static_cast<int>(pr.sugar) > *opt.degree_cap) {
      result.truncated_at = *opt.degree_cap;
      continue;
    }
    st.max_sugar = std::max<std::size_t>(st.max_sugar, pr.sugar);
    if (opt.max_pairs && st.pairs_total > opt.max_pairs)
      throw BudgetExceeded("Groebner pair budget exceeded", gb_diag<F>(st.pairs_total, polys.size(), pairs.size(), pr.sugar));
    if (opt.max_seconds > 0) {
      double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (el > opt.max_seconds)
        throw BudgetExceeded("Groebner time budget exceeded", gb_diag<F>(st.pairs_total, polys.size(), pairs.size(), pr.sugar));
    }
    // S-polynomial
    const auto& f = polys[pr.i];
    const auto& g = polys[pr.j];
    auto s = f.mul_term(pr.lcm / f.lm(), f.field().one()) - g.mul_term(pr.lcm / g.lm(), g.field().one());
    ++st.pairs_reduced;
    auto terms = red.reduce(s.terms(), active_list());
    if (terms.empty()) {
      ++st.zero_reductions;
      continue;
    }
    add(MPoly<F>::from_sorted(ring, std::move(terms)), pr.sugar);
    if (opt.max_basis && polys.size() > opt.max_basis)
      throw BudgetExceeded("Groebner basis size budget exceeded", gb_diag<F>(st.pairs_total, polys.size(), pairs.size(), pr.sugar));
  }

  std::vector<MPoly<F>> act;
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (active[i]) act.push_back(polys[i]);
  result.basis = interreduce(std::move(act), R);
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

template <class F>
MPoly<F> normal_form(const MPoly<F>& f, const std::vector<MPoly<F>>& G) {
  std::vector<MPoly<F>> monic;
  for (auto& g : G) {
    g.check_ring(f);
    if (!g.is_zero()) monic.push_back(g.monic());
  }
  std::vector<const MPoly<F>*> ptrs;
  for (auto& g : monic) ptrs.push_back(&g);
  Reducer<F> red(*f.ring());
  return MPoly<F>::from_sorted(f.ring(), red.reduce(f.terms(), ptrs));
}

template <class F>
std::vector<Monomial> lt_ideal(const GroebnerBasis<F>& G) {
  std::vector<Monomial> lms;
  for (std::size_t i = 0; i < G.basis.size(); ++i) {
    for (std::size_t j = 0; j < G.basis.size(); ++j)
      if (i != j && G.basis[j].lm().divides(G.basis[i].lm()))
        throw InvariantViolation("basis is not reduced: a leading monomial divides another");
    lms.push_back(G.basis[i].lm());
  }
  return minimalize_monomials(std::move(lms));
}

template <class F>
bool spair_audit(const GroebnerBasis<F>& G) {
  const auto& B = G.basis;
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (!B[i].field().is_one(B[i].lc())) return false;
    std::vector<MPoly<F>> others;
    for (std::size_t j = 0; j < B.size(); ++j)
      if (j != i) others.push_back(B[j]);
    if (!others.empty() && normal_form(B[i], others) != B[i]) return false;
  }
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j) {
      if (B[i].lm().coprime(B[j].lm())) continue;
      Monomial l = B[i].lm().lcm(B[j].lm());
      auto s = B[i].mul_term(l / B[i].lm(), B[i].field().one()) - B[j].mul_term(l / B[j].lm(), B[j].field().one());
      if (!normal_form(s, B).is_zero()) return false;
    }
  return true;
}

GBCache::GBCache(std::string dir) : dir_(std::move(dir)) {}

GBCache GBCache::from_env() {
  const char* d = std::getenv("LFORGE_CACHE");
  return GBCache(d ? d : "");
}

std::string GBCache::path_for(const std::string& ring_header, std::uint64_t key) const {
  std::uint64_t h = key;
  for (unsigned char c : ring_header) h = (h ^ c) * 1099511628211ull;
  std::ostringstream os;
  os << dir_ << "/gb-" << std::hex << h << ".txt";
  return os.str();
}

template <class F>
std::optional<GroebnerBasis<F>> GBCache::load(const RingPtr<F>& ring, std::uint64_t key) const {
  if (!enabled()) return std::nullopt;
  std::string path = path_for(ring->header(), key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (text.find("# selfcheck ok") == std::string::npos) return std::nullopt;
  try {
    auto file = parse_poly_file(text);
    if (file.header.to_string() != RingHeader::parse(ring->header()).to_string()) return std::nullopt;
    GroebnerBasis<F> G;
    G.ring = ring;
    G.basis = parse_polys(file, ring);
    G.source_hash = key;
    return G;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

template <class F>
void GBCache::store(const GroebnerBasis<F>& G) const {
  if (!enabled() || G.truncated_at) return;
  std::filesystem::create_directories(dir_);
  std::string path = path_for(G.ring->header(), G.source_hash);
  std::string text = format_polys(G.basis, G.ring);
  text += spair_audit(G) ? "# selfcheck ok\n" : "# selfcheck failed\n";
  std::string tmp = path + ".tmp";
  write_text_file(tmp, text);
  std::filesystem::rename(tmp, path);
}

template <class F>
GroebnerBasis<F> cached_groebner(const std::vector<MPoly<F>>& gens, const GBOptions& opt) {
  static const GBCache cache = GBCache::from_env();
  if (!cache.enabled() || opt.degree_cap || gens.empty()) return buchberger(gens, opt);
  auto key = content_hash(gens);
  if (auto hit = cache.load(gens.front().ring(), key)) return *hit;
  auto G = buchberger(gens, opt);
  cache.store(G);
  return G;
}

#define LFORGE_GB_INSTANTIATE(F)                                                                  \
  template GroebnerBasis<F> buchberger<F>(const std::vector<MPoly<F>>&, const GBOptions&);      \
  template MPoly<F> normal_form<F>(const MPoly<F>&, const std::vector<MPoly<F>>&);             \
  template std::vector<Monomial> lt_ideal<F>(const GroebnerBasis<F>&);                         \
  template bool spair_audit<F>(const GroebnerBasis<F>&);                                       \
  template std::uint64_t content_hash<F>(const std::vector<MPoly<F>>&);                        \
  template std::optional<GroebnerBasis<F>> GBCache::load<F>(const RingPtr<F>&, std::uint64_t) const; \
  template void GBCache::store<F>(const GroebnerBasis<F>&) const;                              \
  template GroebnerBasis<F> cached_groebner<F>(const std::vector<MPoly<F>>&, const GBOptions&);

LFORGE_GB_INSTANTIATE(PrimeField)
LFORGE_GB_INSTANTIATE(RationalField)

}  // namespace lforge
