#include "lforge/mpoly.hpp"

namespace lforge {

std::vector<std::string> indexed_names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

namespace {
void fill_monomials(std::size_t nvars, std::size_t i, unsigned left, Monomial& cur, std::vector<Monomial>& out) {
  if (i + 1 == nvars) {
    cur.set(i, left);
    out.push_back(cur);
    cur.set(i, 0);
    return;
  }
  for (unsigned e = left + 1; e-- > 0;) {
    cur.set(i, e);
    fill_monomials(nvars, i + 1, left - e, cur, out);
  }
  cur.set(i, 0);
}
}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur;
  fill_monomials(nvars, 0, d, cur, out);
  return out;
}

}  // namespace lforge
