#include "isc/reduce.hpp"

#include <limits>
#include <stdexcept>

namespace isc {

int SparseComplex::add_generator(int degree, int filtration) {
  deg_.push_back(degree);
  filt_.push_back(filtration);
  alive_.push_back(1);
  col_.emplace_back();
  row_.emplace_back();
  return static_cast<int>(deg_.size()) - 1;
}

void SparseComplex::add_entry(int from, int to, const Rational& v) {
  if (v.is_zero()) return;
  if (deg_[to] != deg_[from] + 1) throw std::invalid_argument("differential must raise degree by one");
  auto it = col_[from].find(to);
  set(from, to, it == col_[from].end() ? v : it->second + v);
}

void SparseComplex::set(int from, int to, Rational v) {
  if (v.is_zero()) {
    col_[from].erase(to);
    row_[to].erase(from);
  } else {
    col_[from][to] = std::move(v);
    row_[to].insert(from);
  }
}

void SparseComplex::cancel(int x, int y) {
  const Rational b = col_[x].at(y);
  const std::map<int, Rational> dx = col_[x];
  std::vector<int> sources(row_[y].begin(), row_[y].end());
  for (int u : sources) {
    if (u == x) continue;
    Rational f = col_[u].at(y) / b;
    for (const auto& [t, v] : dx) {
      auto it = col_[u].find(t);
      Rational nv = it == col_[u].end() ? -(f * v) : it->second - f * v;
      set(u, t, std::move(nv));
    }
  }
  for (int g : {x, y}) {
    for (const auto& [t, v] : col_[g]) row_[t].erase(g);
    col_[g].clear();
    for (int w : row_[g]) col_[w].erase(g);
    row_[g].clear();
    alive_[g] = 0;
  }
}

void SparseComplex::reduce(bool respect_filtration) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < static_cast<int>(deg_.size()); ++x) {
      while (alive_[x] && !col_[x].empty()) {
        int best = -1;
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        for (const auto& [y, v] : col_[x]) {
          if (respect_filtration && filt_[y] != filt_[x]) continue;
          std::size_t cost = row_[y].size() * 2 + (v == Rational(1) || v == Rational(-1) ? 0 : 1);
          if (cost < best_cost) {
            best_cost = cost;
            best = y;
          }
        }
        if (best < 0) break;
        cancel(x, best);
        changed = true;
      }
    }
  }
}

std::vector<int> SparseComplex::survivors() const {
  std::vector<int> s;
  for (int g = 0; g < static_cast<int>(deg_.size()); ++g)
    if (alive_[g]) s.push_back(g);
  return s;
}

std::map<int, int> SparseComplex::graded_dims() const {
  std::map<int, int> d;
  for (int g : survivors()) d[deg_[g]]++;
  return d;
}

}  // namespace isc
