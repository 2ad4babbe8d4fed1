#pragma once

#include <map>
#include <memory>
#include <vector>

#include "isc/matrix.hpp"
#include "isc/models.hpp"
#include "isc/poset.hpp"

namespace fixtures {

inline isc::PosetPtr share(isc::StratifiedPoset p) { return std::make_shared<const isc::StratifiedPoset>(std::move(p)); }

inline std::vector<int> betti(const isc::GradedDims& g, int lo, int hi) {
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) {
    auto it = g.find(n);
    out.push_back(it == g.end() ? 0 : it->second);
  }
  return out;
}

// simplicial cochain Betti numbers straight from the facet list
inline std::vector<int> simplicial_betti(const isc::StratifiedPoset& l) {
  std::vector<int> f(l.dim() + 1, 0);
  for (const auto& c : l.cells()) ++f[c.dim];
  std::vector<std::size_t> rk(l.dim() + 2, 0);
  for (int d = 0; d < l.dim(); ++d) {
    std::map<int, int> row, col;
    for (int c = 0; c < l.size(); ++c) {
      if (l.cell(c).dim == d) col.emplace(c, static_cast<int>(col.size()));
      if (l.cell(c).dim == d + 1) row.emplace(c, static_cast<int>(row.size()));
    }
    isc::RatMatrix m(row.size(), col.size());
    for (const auto& e : l.edges())
      if (row.count(e.coface) && col.count(e.face)) m(row[e.coface], col[e.face]) = e.sign;
    rk[d + 1] = isc::rank(m);
  }
  std::vector<int> b;
  for (int d = 0; d <= l.dim(); ++d) b.push_back(f[d] - static_cast<int>(rk[d + 1]) - static_cast<int>(rk[d]));
  return b;
}

}  // namespace fixtures
