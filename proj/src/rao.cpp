#include "lforge/rao.hpp"

#include "lforge/parse.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <iomanip>
#include <set>
#include <sstream>

namespace lforge {

namespace {

long long binom(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long forms_dim(std::size_t nvars, int d) { return d < 0 ? 0 : binom(d + (long long)nvars - 1, (long long)nvars - 1); }

/// Incrementally built echelon basis; rows keep zeros in the pivots of earlier rows.
template <class F>
class Echelon {
 public:
  using Elem = typename F::Elem;
  Echelon(const F& K, std::size_t len) : K_(K), len_(len) {}

  std::size_t rank() const { return rows_.size(); }

  /// Adds v when it is independent of the current rows.
  bool add(std::vector<Elem> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Elem c = v[piv_[r]];
      if (K_.is_zero(c)) continue;
      Elem f = K_.neg(c);
      const auto& row = rows_[r];
      for (std::size_t j = 0; j < len_; ++j)
        if (!K_.is_zero(row[j])) v[j] = K_.mul_add(f, row[j], v[j]);
    }
    std::size_t p = 0;
    while (p < len_ && K_.is_zero(v[p])) ++p;
    if (p == len_) return false;
    Elem inv = K_.inv(v[p]);
    for (std::size_t j = p; j < len_; ++j) v[j] = K_.mul(v[j], inv);
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }

 private:
  const F& K_;
  std::size_t len_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<std::size_t> piv_;
};

/// Monomial bases of R_e with index lookup.
class MonomialCache {
 public:
  explicit MonomialCache(std::size_t n) : n_(n) {}
  const std::vector<Monomial>& of(int e) {
    fill(e);
    return mons_[e];
  }
  std::size_t index(const Monomial& m) {
    int e = (int)m.degree();
    fill(e);
    return idx_[e].at(m.exponents(n_));
  }

 private:
  void fill(int e) {
    while ((int)mons_.size() <= e) {
      int d = (int)mons_.size();
      mons_.push_back(monomials_of_degree(n_, d));
      std::map<std::vector<unsigned>, std::size_t> ix;
      for (std::size_t i = 0; i < mons_.back().size(); ++i) ix[mons_.back()[i].exponents(n_)] = i;
      idx_.push_back(std::move(ix));
    }
  }
  std::size_t n_;
  std::vector<std::vector<Monomial>> mons_;
  std::vector<std::map<std::vector<unsigned>, std::size_t>> idx_;
};

/// Offsets of the blocks R_{d - deg g} inside the degree-d piece of a free module.
struct Slice {
  std::vector<std::size_t> offset;
  std::size_t size = 0;
};

Slice make_slice(const std::vector<int>& degs, int d, std::size_t nvars) {
  Slice s;
  for (int g : degs) {
    s.offset.push_back(s.size);
    s.size += (std::size_t)forms_dim(nvars, d - g);
  }
  return s;
}

}  // namespace

template <class F>
Matrix<F> RaoModule<F>::act(std::size_t i, int k) const {
  if (k < k_min || k >= k_max) return Matrix<F>(field, (std::size_t)dim(k + 1), (std::size_t)dim(k));
  return action[k - k_min][i];
}

template <class F>
int RaoModule<F>::bottom() const {
  for (int k = k_min; k <= k_max; ++k)
    if (dim(k)) return k;
  return k_max + 1;
}

template <class F>
int RaoModule<F>::top() const {
  for (int k = k_max; k >= k_min; --k)
    if (dim(k)) return k;
  return k_min - 1;
}

template <class F>
RaoModule<F> rao_module_from_forms(const std::vector<MPoly<F>>& forms, int k_max) {
  if (forms.empty()) throw ConstructionError("no forms");
  auto src = forms.front().ring();
  const F& K = src->field();
  auto fd = forms.front().homogeneous_degree();
  if (!fd || *fd <= 0) throw ConstructionError("forms must be homogeneous of positive degree");
  int d = *fd;
  std::size_t ns = src->nvars();
  MonomialCache smon(ns);

  RaoModule<F> M;
  M.field = K;
  M.nvars = forms.size();
  M.k_min = 0;
  M.k_max = k_max;
  M.truncated = true;

  // Per grade: complement monomials (non-pivots) and the reduced image rows.
  struct Grade {
    std::vector<std::size_t> free_cols;
    std::vector<std::size_t> pivots;
    Matrix<F> red;
  };
  std::vector<Grade> grades;
  for (int k = 0; k <= k_max + 1; ++k) {
    Grade g;
    if (k == 0) {
      g.red = Matrix<F>(K, 1, 1);
      g.red(0, 0) = K.one();
      g.pivots = {0};
    } else {
      g.red = evaluation_matrix(forms, (unsigned)k);
      g.pivots = rref(g.red);
    }
    std::vector<bool> is_piv(g.red.cols(), false);
    for (auto c : g.pivots) is_piv[c] = true;
    for (std::size_t c = 0; c < g.red.cols(); ++c)
      if (!is_piv[c]) g.free_cols.push_back(c);
    if (k <= k_max) {
      M.sym_dims.push_back(forms_dim(forms.size(), k));
      M.source_dims.push_back(forms_dim(ns, d * k));
      M.image_ranks.push_back((long long)g.pivots.size());
      M.dims.push_back((long long)g.free_cols.size());
    }
    grades.push_back(std::move(g));
  }

  // Reduce a degree-dk source vector modulo the image; coordinates on the free columns.
  auto project = [&](int k, std::vector<typename F::Elem> w) {
    const Grade& g = grades[k];
    for (std::size_t r = 0; r < g.pivots.size(); ++r) {
      auto c = w[g.pivots[r]];
      if (K.is_zero(c)) continue;
      auto f = K.neg(c);
      for (std::size_t j = 0; j < w.size(); ++j)
        if (!K.is_zero(g.red(r, j))) w[j] = K.mul_add(f, g.red(r, j), w[j]);
    }
    std::vector<typename F::Elem> out;
    for (auto c : g.free_cols) out.push_back(w[c]);
    return out;
  };

  for (int k = 0; k < k_max; ++k) {
    std::vector<Matrix<F>> acts;
    const auto& here = smon.of(d * k);
    const auto& next = smon.of(d * (k + 1));
    for (std::size_t i = 0; i < forms.size(); ++i) {
      Matrix<F> A(K, grades[k + 1].free_cols.size(), grades[k].free_cols.size());
      for (std::size_t q = 0; q < grades[k].free_cols.size(); ++q) {
        std::vector<typename F::Elem> w(next.size(), K.zero());
        for (auto& t : forms[i].terms()) w[smon.index(here[grades[k].free_cols[q]] * t.m)] = t.c;
        auto col = project(k + 1, std::move(w));
        for (std::size_t r = 0; r < col.size(); ++r) A(r, q) = col[r];
      }
      acts.push_back(std::move(A));
    }
    M.action.push_back(std::move(acts));
  }
  return M;
}

template <class F>
RaoModule<F> rao_module(const ProjectionSpec<F>& spec, const SecantCertificate& cert, int k_max) {
  if (!cert.empty)
    throw ConstructionError("projection not injective on the Veronese: the centre meets the secant variety");
  return rao_module_from_forms(spec.composed(), k_max);
}

template <class F>
RaoModule<F> make_rao_module(const F& field, std::size_t nvars, int k_min, std::vector<long long> dims,
                             std::vector<std::vector<Matrix<F>>> action) {
  RaoModule<F> M;
  M.field = field;
  M.nvars = nvars;
  M.k_min = k_min;
  M.k_max = k_min + (int)dims.size() - 1;
  if (action.size() + 1 != dims.size() && !(dims.empty() && action.empty()))
    throw ConstructionError("need one action list per consecutive pair of grades");
  for (std::size_t k = 0; k < action.size(); ++k) {
    if (action[k].size() != nvars) throw ConstructionError("need one action matrix per variable");
    for (auto& A : action[k])
      if ((long long)A.rows() != dims[k + 1] || (long long)A.cols() != dims[k])
        throw ConstructionError("action matrix has the wrong shape at grade " + std::to_string(k_min + (int)k));
  }
  M.dims = std::move(dims);
  M.action = std::move(action);
  if (action_commutator_failures(M)) throw ConstructionError("action matrices do not commute");
  return M;
}

template <class F>
RaoHilbertReport rao_hilbert(const RaoModule<F>& M) {
  RaoHilbertReport rep;
  for (int k = 0; k <= M.k_max; ++k) rep.values.push_back(M.dim(k));
  for (std::size_t k = 0; k < M.image_ranks.size(); ++k) {
    std::ostringstream os;
    os << "k=" << k + M.k_min << ": " << M.source_dims[k] << " - " << M.image_ranks[k] << " = " << M.dims[k]
       << (M.image_ranks[k] == M.sym_dims[k] ? " (injective, Sym dim " : " (kernel, Sym dim ") << M.sym_dims[k]
       << ")";
    rep.audit.push_back(os.str());
  }
  rep.finite_length = M.dims.empty() || M.dims.back() == 0;
  return rep;
}

template <class F>
std::size_t action_commutator_failures(const RaoModule<F>& M) {
  std::size_t bad = 0;
  for (int k = M.k_min; k + 1 < M.k_max; ++k)
    for (std::size_t i = 0; i < M.nvars; ++i)
      for (std::size_t j = i + 1; j < M.nvars; ++j) {
        auto a = M.act(i, k + 1) * M.act(j, k);
        auto b = M.act(j, k + 1) * M.act(i, k);
        if (!(a == b)) ++bad;
      }
  return bad;
}

long long BettiTable::rank(int i) const {
  long long r = 0;
  for (auto& [ij, b] : beta)
    if (ij.first == i) r += b;
  return r;
}

long long BettiTable::alternating_rank_sum() const {
  long long s = 0;
  for (auto& [ij, b] : beta) s += (ij.first % 2 ? -b : b);
  return s;
}

std::string BettiTable::to_text(int degree_offset) const {
  int imax = max_hom;
  for (auto& [ij, b] : beta) imax = std::max(imax, ij.first);
  int rmin = 0, rmax = -1;
  bool first = true;
  for (auto& [ij, b] : beta) {
    if (!b) continue;
    int r = ij.second - ij.first + degree_offset;
    if (first || r < rmin) rmin = r;
    if (first || r > rmax) rmax = r;
    first = false;
  }
  std::ostringstream os;
  const int w = 6;
  os << std::string(w, ' ');
  for (int i = 0; i <= imax; ++i) os << std::setw(w) << i;
  os << "\n" << std::setw(w) << "total:";
  for (int i = 0; i <= imax; ++i) os << std::setw(w) << rank(i);
  os << "\n";
  for (int r = rmin; r <= rmax; ++r) {
    os << std::setw(w - 1) << r << ":";
    for (int i = 0; i <= imax; ++i) {
      long long b = at(i, i + r - degree_offset);
      os << std::setw(w) << (b ? std::to_string(b) : std::string("."));
    }
    os << "\n";
  }
  if (!complete) os << "(incomplete" << (note.empty() ? "" : ": " + note) << ")\n";
  return os.str();
}

std::string BettiTable::to_free_modules(int degree_offset) const {
  int imax = max_hom;
  for (auto& [ij, b] : beta) imax = std::max(imax, ij.first);
  std::ostringstream os;
  for (int i = 0; i <= imax; ++i) {
    if (i) os << "; ";
    bool any = false;
    for (auto& [ij, b] : beta) {
      if (ij.first != i || !b) continue;
      if (any) os << " + ";
      int tw = -(ij.second + degree_offset);
      os << b << "R";
      if (tw) os << "(" << tw << ")";
      any = true;
    }
    if (!any) os << "0";
  }
  return os.str();
}

BettiTable BettiTable::parse_free_modules(const std::string& text, int degree_offset) {
  std::string s;
  for (std::size_t p = 0; p < text.size();) {
    if (text.compare(p, 3, "\xe2\x8a\x95") == 0) {  // ⊕
      s += '+';
      p += 3;
    } else if (text.compare(p, 3, "\xe2\x88\x92") == 0) {  // −
      s += '-';
      p += 3;
    } else {
      s += text[p++];
    }
  }
  BettiTable B;
  B.complete = true;
  std::stringstream cols(s);
  std::string col;
  int i = 0;
  while (std::getline(cols, col, ';')) {
    std::stringstream terms(col);
    std::string t;
    while (std::getline(terms, t, '+')) {
      std::string u;
      for (char c : t)
        if (!std::isspace((unsigned char)c)) u += c;
      if (u.empty() || u == "0") continue;
      auto r = u.find('R');
      if (r == std::string::npos) throw ParseError("expected <count>R(<twist>) in Betti table", 0);
      long long count = r ? std::stoll(u.substr(0, r)) : 1;
      int tw = 0;
      if (r + 1 < u.size()) {
        if (u[r + 1] != '(' || u.back() != ')') throw ParseError("bad twist in Betti table term '" + u + "'", 0);
        tw = std::stoi(u.substr(r + 2, u.size() - r - 3));
      }
      B.beta[{i, -tw - degree_offset}] += count;
    }
    B.max_hom = i;
    ++i;
  }
  return B;
}

BettiTable BettiTable::parse_text(const std::string& text, int degree_offset) {
  BettiTable B;
  B.complete = true;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto c = line.find_first_not_of(" \t");
    if (c == std::string::npos || line[c] == '#' || line[c] == '(') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;  // column header
    std::string label = line.substr(c, colon - c);
    if (label == "total") continue;
    int r = 0;
    try {
      r = std::stoi(label);
    } catch (const std::exception&) {
      throw ParseError("bad row label '" + label + "' in Betti table", c);
    }
    std::istringstream cells(line.substr(colon + 1));
    std::string cell;
    int i = 0;
    while (cells >> cell) {
      if (cell != ".") {
        long long b = 0;
        try {
          b = std::stoll(cell);
        } catch (const std::exception&) {
          throw ParseError("bad Betti number '" + cell + "'", colon);
        }
        if (b) B.beta[{i, i + r - degree_offset}] = b;
      }
      B.max_hom = std::max(B.max_hom, i);
      ++i;
    }
  }
  return B;
}

std::string BettiTable::to_json(int degree_offset) const {
  nlohmann::ordered_json j;
  j["complete"] = complete;
  j["note"] = note;
  j["max_hom"] = max_hom;
  j["degree_offset"] = degree_offset;
  auto entries = nlohmann::ordered_json::array();
  for (auto& [ij, b] : beta) entries.push_back({ij.first, ij.second + degree_offset, b});
  j["entries"] = entries;
  return j.dump();
}

BettiComparison compare_betti(const BettiTable& computed, const BettiTable& expected, int max_hom) {
  BettiComparison c;
  std::set<std::pair<int, int>> cells;
  for (auto& [ij, b] : computed.beta)
    if (ij.first <= max_hom) cells.insert(ij);
  for (auto& [ij, b] : expected.beta)
    if (ij.first <= max_hom) cells.insert(ij);
  for (auto& ij : cells) {
    ++c.cells_compared;
    long long a = computed.at(ij.first, ij.second), e = expected.at(ij.first, ij.second);
    if (a != e) c.mismatches.push_back({ij.first, ij.second, a, e});
  }
  return c;
}

std::string BettiComparison::to_text(int degree_offset) const {
  std::ostringstream os;
  os << cells_compared << " cells compared, " << mismatches.size() << " mismatches\n";
  for (auto& m : mismatches)
    os << "  beta[" << m.i << "," << m.j + degree_offset << "]: computed " << m.computed << ", expected "
       << m.expected << "\n";
  return os.str();
}

long long betti_hilbert(const BettiTable& B, std::size_t nvars, int k) {
  long long s = 0;
  for (auto& [ij, b] : B.beta) s += (ij.first % 2 ? -1 : 1) * b * forms_dim(nvars, k - ij.second);
  return s;
}

namespace {

/// State of the resolution shared by graded_betti and rao_presentation.
template <class F>
struct Resolver {
  using Elem = typename F::Elem;
  const RaoModule<F>& M;
  ResolutionOptions opt;
  RingPtr<F> R;
  MonomialCache mons;
  Rng rng;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  // F_0: degrees and generator vectors in M.
  std::vector<int> deg0;
  std::vector<std::vector<Elem>> gen0;
  // F_i (i >= 1): degrees and images in F_{i-1}.
  std::vector<std::vector<int>> degs;
  std::vector<std::vector<FreeElement<F>>> imgs;
  std::vector<std::string> certificates;

  Resolver(const RaoModule<F>& m, const ResolutionOptions& o)
      : M(m), opt(o), R(make_ring(m.field, indexed_names("x", m.nvars))), mons(m.nvars), rng(o.seed) {}

  const F& K() const { return M.field; }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  /// x^a applied to a vector of M_k.
  std::map<std::pair<std::size_t, std::vector<unsigned>>, std::vector<Elem>> mvec_memo;
  const std::vector<Elem>& mvec(std::size_t g, const Monomial& a) {
    auto key = std::make_pair(g, a.exponents(M.nvars));
    auto it = mvec_memo.find(key);
    if (it != mvec_memo.end()) return it->second;
    std::vector<Elem> v;
    if (a.degree() == 0) {
      v = gen0[g];
    } else {
      std::size_t i = 0;
      while (!a[i]) ++i;
      Monomial b = a;
      b.set(i, a[i] - 1);
      int k = deg0[g] + (int)b.degree();
      auto u = mvec(g, b);
      v = M.act(i, k).apply(u);
    }
    return mvec_memo.emplace(key, std::move(v)).first->second;
  }

  /// Coordinates of x^a·img (img in F_{i-1}) in the degree-d slice of F_{i-1}.
  std::vector<Elem> coords(const FreeElement<F>& img, const Monomial& a, const Slice& sl) {
    std::vector<Elem> v(sl.size, K().zero());
    for (std::size_t h = 0; h < img.size(); ++h)
      for (auto& t : img[h].terms()) v[sl.offset[h] + mons.index(t.m * a)] = t.c;
    return v;
  }

  /// Matrix of F_i,d → F_{i-1},d (i >= 1) or F_0,d → M_d (i = 0).
  Matrix<F> slice_map(std::size_t i, int d) {
    if (i == 0) {
      Slice sl = make_slice(deg0, d, M.nvars);
      Matrix<F> A(K(), (std::size_t)M.dim(d), sl.size);
      for (std::size_t g = 0; g < deg0.size(); ++g) {
        if (d < deg0[g]) continue;
        const auto& ms = mons.of(d - deg0[g]);
        for (std::size_t a = 0; a < ms.size(); ++a) {
          const auto& v = mvec(g, ms[a]);
          for (std::size_t r = 0; r < v.size(); ++r) A(r, sl.offset[g] + a) = v[r];
        }
      }
      return A;
    }
    const auto& pd = prev(i);
    Slice src = make_slice(degs[i], d, M.nvars), dst = make_slice(pd, d, M.nvars);
    Matrix<F> A(K(), dst.size, src.size);
    for (std::size_t g = 0; g < degs[i].size(); ++g) {
      if (d < degs[i][g]) continue;
      const auto& ms = mons.of(d - degs[i][g]);
      for (std::size_t a = 0; a < ms.size(); ++a)
        for (std::size_t h = 0; h < imgs[i][g].size(); ++h)
          for (auto& t : imgs[i][g][h].terms()) A(dst.offset[h] + mons.index(t.m * ms[a]), src.offset[g] + a) = t.c;
    }
    return A;
  }

  const std::vector<int>& prev(std::size_t i) const { return i == 1 ? deg0 : degs[i - 1]; }

  FreeElement<F> to_element(const std::vector<Elem>& v, const std::vector<int>& pd, int d) {
    Slice sl = make_slice(pd, d, M.nvars);
    FreeElement<F> e;
    for (std::size_t h = 0; h < pd.size(); ++h) {
      std::vector<Term<F>> terms;
      if (d >= pd[h]) {
        const auto& ms = mons.of(d - pd[h]);
        for (std::size_t a = 0; a < ms.size(); ++a)
          if (!K().is_zero(v[sl.offset[h] + a])) terms.push_back({ms[a], v[sl.offset[h] + a]});
      }
      e.push_back(MPoly<F>(R, std::move(terms)));
    }
    return e;
  }

  /// Candidate order for completing a basis: seeded random combinations first when a seed is set.
  std::vector<std::vector<Elem>> candidates(const std::vector<std::vector<Elem>>& Z) {
    if (!opt.seed || Z.empty()) return Z;
    std::vector<std::vector<Elem>> out;
    for (std::size_t c = 0; c < Z.size(); ++c) {
      std::vector<Elem> v(Z[0].size(), K().zero());
      for (auto& z : Z) {
        auto r = rng.element(K());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = K().mul_add(r, z[j], v[j]);
      }
      out.push_back(std::move(v));
    }
    out.insert(out.end(), Z.begin(), Z.end());
    return out;
  }

  /// Generators of F_0: complements of R_1·(lower grades) in each M_d.
  void step0(BettiTable& B) {
    for (int d = M.bottom(); d <= M.top(); ++d) {
      std::size_t n = (std::size_t)M.dim(d);
      Echelon<F> E(K(), n);
      for (std::size_t g = 0; g < deg0.size() && E.rank() < n; ++g) {
        if (deg0[g] >= d) continue;
        for (auto& a : mons.of(d - deg0[g])) {
          if (E.rank() == n) break;
          E.add(mvec(g, a));
        }
      }
      std::size_t lower = E.rank();
      std::vector<std::vector<Elem>> Z;
      for (std::size_t r = 0; r < n; ++r) {
        std::vector<Elem> e(n, K().zero());
        e[r] = K().one();
        Z.push_back(std::move(e));
      }
      long long added = 0;
      for (auto& z : candidates(Z)) {
        if (E.rank() == n) break;
        if (E.add(z)) {
          deg0.push_back(d);
          gen0.push_back(z);
          ++added;
        }
      }
      std::ostringstream os;
      os << "M_" << d << ": dim " << n << ", rank of R_1*lower " << lower << ", new generators " << added;
      certificates.push_back(os.str());
      if (added) B.beta[{0, d}] = added;
    }
  }

  /// Generators of F_i (i >= 1) in degrees [lo, hi]; false when a budget stops the step.
  bool step(std::size_t i, int lo, int hi, BettiTable& B) {
    if (degs.size() <= i) {
      degs.resize(i + 1);
      imgs.resize(i + 1);
    }
    const auto& pd = prev(i);
    for (int d = lo; d <= hi; ++d) {
      Slice sl = make_slice(pd, d, M.nvars);
      if (sl.size > opt.max_columns) {
        B.note = "slice F_" + std::to_string(i - 1) + " in degree " + std::to_string(d) + " has " +
                 std::to_string(sl.size) + " columns, over the budget";
        return false;
      }
      if (opt.max_seconds > 0 && elapsed() > opt.max_seconds) {
        B.note = "time budget exhausted at homological degree " + std::to_string(i);
        return false;
      }
      auto Z = nullspace(slice_map(i - 1, d));
      Echelon<F> E(K(), sl.size);
      for (std::size_t g = 0; g < degs[i].size() && E.rank() < Z.size(); ++g) {
        if (degs[i][g] >= d) continue;
        for (auto& a : mons.of(d - degs[i][g])) {
          if (E.rank() == Z.size()) break;
          E.add(coords(imgs[i][g], a, sl));
        }
      }
      std::size_t lower = E.rank();
      long long added = 0;
      std::vector<FreeElement<F>> fresh;
      for (auto& z : candidates(Z)) {
        if (E.rank() == Z.size()) break;
        if (E.add(z)) {
          fresh.push_back(to_element(z, pd, d));
          ++added;
        }
      }
      for (auto& e : fresh) {
        degs[i].push_back(d);
        imgs[i].push_back(std::move(e));
      }
      std::ostringstream os;
      os << "F_" << i << " degree " << d << ": kernel dim " << Z.size() << ", rank of R_1*lower " << lower
         << ", new generators " << added;
      certificates.push_back(os.str());
      if (added) B.beta[{(int)i, d}] = added;
    }
    return true;
  }

  BettiTable run(int max_hom) {
    if (M.truncated && (M.dim(M.k_max) != 0 || M.dim(M.k_min) != 0))
      throw ConstructionError("bound insufficient: module range [" + std::to_string(M.k_min) + ", " +
                              std::to_string(M.k_max) + "] does not show finite length");
    BettiTable B;
    B.max_hom = max_hom;
    step0(B);
    B.complete = true;
    int top = M.top();
    // F_i = 0 for i > nvars (Hilbert syzygy theorem).
    for (int i = 1; i <= std::min(max_hom, (int)M.nvars); ++i) {
      const auto& pd = prev((std::size_t)i);
      if (pd.empty()) break;
      int lo = *std::min_element(pd.begin(), pd.end()) + 1;
      int hi = top + i + opt.extra_degrees;
      if (!step((std::size_t)i, lo, hi, B)) {
        B.complete = false;
        B.max_hom = i - 1;
        return B;
      }
    }
    if (max_hom < (int)M.nvars && !prev((std::size_t)max_hom + 1).empty()) {
      B.complete = false;
      B.note = "truncated at homological degree " + std::to_string(max_hom);
    }
    return B;
  }
};

}  // namespace

template <class F>
RaoPresentation<F> rao_presentation(const RaoModule<F>& M, const ResolutionOptions& opt) {
  Resolver<F> res(M, opt);
  auto B = res.run(1);
  RaoPresentation<F> P;
  for (auto& [ij, b] : B.beta) (ij.first == 0 ? P.generators : P.relations)[ij.second] += b;
  P.generator_vectors = res.gen0;
  P.generator_degrees = res.deg0;
  if (res.degs.size() > 1) {
    P.relation_elements = res.imgs[1];
    P.relation_degrees = res.degs[1];
  }
  P.certified_to = M.top() + 1 + opt.extra_degrees;
  P.rank_certificates = res.certificates;
  return P;
}

template <class F>
BettiTable graded_betti(const RaoModule<F>& M, const ResolutionOptions& opt, std::vector<ResolutionStep<F>>* steps) {
  Resolver<F> res(M, opt);
  auto B = res.run(opt.max_hom);
  if (steps) {
    steps->clear();
    ResolutionStep<F> s0;
    s0.gen_degrees = res.deg0;
    for (auto& v : res.gen0) {
      FreeElement<F> e;
      for (auto c : v) e.push_back(MPoly<F>::constant(res.R, c));
      s0.images.push_back(std::move(e));
    }
    steps->push_back(std::move(s0));
    for (std::size_t i = 1; i < res.degs.size(); ++i) steps->push_back({res.degs[i], res.imgs[i]});
  }
  return B;
}

template <class F>
BettiTable koszul_betti(const RaoModule<F>& M) {
  const F& K = M.field;
  std::size_t n = M.nvars;
  if (n > 20) throw ConstructionError("too many variables for the Koszul complex");
  std::vector<std::vector<std::uint32_t>> subsets(n + 1);
  for (std::uint32_t s = 0; s < (1u << n); ++s) subsets[__builtin_popcount(s)].push_back(s);
  std::vector<std::map<std::uint32_t, std::size_t>> pos(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t a = 0; a < subsets[i].size(); ++a) pos[i][subsets[i][a]] = a;

  // ∂: ∧^i ⊗ M_k → ∧^{i-1} ⊗ M_{k+1}
  auto diff = [&](std::size_t i, int k) {
    std::size_t dk = (std::size_t)M.dim(k), dk1 = (std::size_t)M.dim(k + 1);
    Matrix<F> D(K, subsets[i - 1].size() * dk1, subsets[i].size() * dk);
    for (std::size_t a = 0; a < subsets[i].size(); ++a) {
      auto S = subsets[i][a];
      int sign_pos = 0;
      for (std::size_t t = 0; t < n; ++t) {
        if (!(S >> t & 1)) continue;
        auto X = M.act(t, k);
        std::size_t b = pos[i - 1].at(S & ~(1u << t));
        bool neg = sign_pos % 2;
        for (std::size_t r = 0; r < dk1; ++r)
          for (std::size_t c = 0; c < dk; ++c) {
            auto v = X(r, c);
            if (!K.is_zero(v)) D(b * dk1 + r, a * dk + c) = neg ? K.neg(v) : v;
          }
        ++sign_pos;
      }
    }
    return D;
  };
  auto rk = [&](std::size_t i, int k) -> long long {
    if (i == 0 || i > n || M.dim(k) == 0 || M.dim(k + 1) == 0) return 0;
    return (long long)rank(diff(i, k));
  };
  BettiTable B;
  B.max_hom = (int)n;
  B.complete = true;
  for (std::size_t i = 0; i <= n; ++i)
    for (int k = M.k_min; k <= M.k_max; ++k) {
      long long c = (long long)subsets[i].size() * M.dim(k);
      if (!c) continue;
      long long h = c - rk(i, k) - rk(i + 1, k - 1);
      if (h) B.beta[{(int)i, k + (int)i}] = h;
    }
  return B;
}

template <class F>
LinkedHilbertReport<F> linked_hilbert_check(const Ideal<F>& S, const Ideal<F>& D, const Ideal<F>& V1,
                                            const Ideal<F>& V2, int max_degree) {
  LinkedHilbertReport<F> rep;
  auto degsum = [](const Ideal<F>& I) {
    long long s = 0;
    for (auto& g : I.gens()) s += g.degree();
    return s;
  };
  int shift = (int)(degsum(V2) - degsum(V1));
  std::size_t n = S.ring()->nvars();
  auto piece = [](const Ideal<F>& I, int t) { return t < 0 ? 0LL : I.graded_piece_dim(t); };
  rep.matches = true;
  for (int t = 0; t <= max_degree; ++t) {
    long long c = forms_dim(n, t) - piece(S, t);
    long long p = forms_dim(n, t) - (piece(V2, t) + piece(D, t - shift) - piece(V1, t - shift));
    rep.computed.push_back(c);
    rep.predicted.push_back(p);
    if (c != p) rep.matches = false;
  }
  rep.note = "shift " + std::to_string(shift) + "; Hilbert-function consistency only";
  return rep;
}

template <class F>
LinkedHilbertReport<F> linked_hilbert_check(const BilinkReport<F>& chain, int max_degree) {
  if (chain.steps.size() < 2) throw ConstructionError("linked_hilbert_check needs a completed two-step chain");
  return linked_hilbert_check(chain.steps[1].residual, chain.steps[0].input, chain.steps[0].ci, chain.steps[1].ci,
                              max_degree);
}

#define LFORGE_RAO(F)                                                                                              \
  template struct RaoModule<F>;                                                                                    \
  template RaoModule<F> rao_module_from_forms(const std::vector<MPoly<F>>&, int);                                 \
  template RaoModule<F> rao_module(const ProjectionSpec<F>&, const SecantCertificate&, int);                      \
  template RaoModule<F> make_rao_module(const F&, std::size_t, int, std::vector<long long>,                       \
                                        std::vector<std::vector<Matrix<F>>>);                                      \
  template RaoHilbertReport rao_hilbert(const RaoModule<F>&);                                                      \
  template std::size_t action_commutator_failures(const RaoModule<F>&);                                           \
  template RaoPresentation<F> rao_presentation(const RaoModule<F>&, const ResolutionOptions&);                    \
  template BettiTable graded_betti(const RaoModule<F>&, const ResolutionOptions&, std::vector<ResolutionStep<F>>*); \
  template BettiTable koszul_betti(const RaoModule<F>&);                                                           \
  template LinkedHilbertReport<F> linked_hilbert_check(const Ideal<F>&, const Ideal<F>&, const Ideal<F>&,         \
                                                       const Ideal<F>&, int);                                      \
  template LinkedHilbertReport<F> linked_hilbert_check(const BilinkReport<F>&, int);

LFORGE_RAO(PrimeField)
LFORGE_RAO(RationalField)

}  // namespace lforge
