#include "isc/istower.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "isc/errors.hpp"

namespace isc {

// ---- perversities --------------------------------------------------------

int Perversity::at(int k) const {
  auto it = values.find(k);
  if (it == values.end()) throw InvalidInput("perversity undefined at codimension " + std::to_string(k));
  return it->second;
}

void Perversity::validate() const {
  if (values.empty()) return;
  if (values.begin()->first != 2 || values.begin()->second != 0) throw InvalidInput("perversity must vanish at 2");
  int prev_k = 1, prev_v = 0;
  for (const auto& [k, v] : values) {
    if (k != prev_k + 1) throw InvalidInput("perversity codimensions must be consecutive");
    if (k > 2 && (v < prev_v || v > prev_v + 1)) throw InvalidInput("perversity steps must be 0 or 1");
    prev_k = k;
    prev_v = v;
  }
}

std::string Perversity::str() const {
  std::string out;
  for (const auto& [k, v] : values) {
    if (!out.empty()) out += ",";
    out += std::to_string(k) + ":" + std::to_string(v);
  }
  return out;
}

Perversity Perversity::parse(const std::string& text, int d_max) {
  if (text.find(':') == std::string::npos) return standard_perversity(text, d_max);
  Perversity p;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw InvalidInput("bad perversity entry '" + tok + "'");
    try {
      p.values[std::stoi(tok.substr(0, colon))] = std::stoi(tok.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw InvalidInput("bad perversity entry '" + tok + "'");
    }
  }
  p.validate();
  if (p.d_max() < d_max) throw InvalidInput("perversity does not reach codimension " + std::to_string(d_max));
  return p;
}

Perversity standard_perversity(const std::string& name, int d_max) {
  if (d_max < 2) throw InvalidInput("perversities need d_max >= 2");
  Perversity p;
  for (int k = 2; k <= d_max; ++k) {
    if (name == "zero") p.values[k] = 0;
    else if (name == "total") p.values[k] = k - 2;
    else if (name == "lower-middle") p.values[k] = k / 2 - 1;
    else if (name == "upper-middle") p.values[k] = (k - 1) / 2;
    else throw InvalidInput("unknown perversity '" + name + "'");
  }
  return p;
}

Perversity complement(const Perversity& p) {
  Perversity q;
  for (const auto& [k, v] : p.values) q.values[k] = k - 2 - v;
  q.validate();
  return q;
}

// ---- axioms --------------------------------------------------------------

std::vector<std::string> AxiomReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass)
      out.push_back("(" + c.axiom + ") codim " + std::to_string(c.codim) + " degree " + std::to_string(c.degree) +
                    (c.detail.empty() ? "" : ": " + c.detail));
  return out;
}

namespace {

const std::vector<int>& empty_list() {
  static const std::vector<int> e;
  return e;
}

const std::vector<int>& at_degree(const std::map<int, std::vector<int>>& m, int n) {
  auto it = m.find(n);
  return it == m.end() ? empty_list() : it->second;
}

// induced map on H^n for the projection of the stalk complex `full` onto the
// generators in `part` (a quotient complex)
std::pair<int, std::pair<int, int>> projection_on_cohomology(const InjComplex& k,
                                                             const std::map<int, std::vector<int>>& full,
                                                             const std::map<int, std::vector<int>>& part, int n) {
  const auto& l0 = at_degree(full, n);
  const auto& m0 = at_degree(part, n);
  CohomologyData hl = cohomology(k.block(l0, at_degree(full, n - 1)), k.block(at_degree(full, n + 1), l0), l0.size());
  CohomologyData hm = cohomology(k.block(m0, at_degree(part, n - 1)), k.block(at_degree(part, n + 1), m0), m0.size());
  if (hl.dim == 0 || hm.dim == 0) return {0, {static_cast<int>(hl.dim), static_cast<int>(hm.dim)}};
  RatMatrix proj(m0.size(), l0.size());
  std::size_t i = 0;
  for (std::size_t j = 0; j < m0.size(); ++j) {
    while (l0[i] != m0[j]) ++i;
    proj(j, i) = 1;
  }
  int r = static_cast<int>(rank(hm.pi * proj * hl.iota));
  return {r, {static_cast<int>(hl.dim), static_cast<int>(hm.dim)}};
}

}  // namespace

AxiomReport check_axioms(const InjComplex& k, const Perversity& p, Variant v) {
  const PosetPtr& x = k.base.parent;
  if (k.base.size() != x->size()) throw InvalidInput("axiom check needs a complex on the whole space");
  AxiomReport rep;
  auto add = [&](AxiomCheck c) {
    rep.pass = rep.pass && c.pass;
    rep.checks.push_back(std::move(c));
  };
  const int lo = std::min(k.lo(), 0), hi = std::max(k.hi(), 0);
  std::map<int, GradedDims> stalks;
  for (int c = 0; c < x->size(); ++c) stalks[c] = k.stalk_cohomology(c);

  // (a): Q on the top stratum
  {
    Selection u2 = open_complement(x, 2);
    auto s = k.sheaf_on(u2);
    AxiomCheck a{"a", 0, 0, true, ""};
    ConstancyReport cr = is_constant_rank_one(cohomology_sheaf(*s, 0), u2);
    if (!cr.constant) {
      a.pass = false;
      a.detail = cr.reason;
    }
    for (int c : u2.cells)
      for (const auto& [n, dim] : stalks[c])
        if (n != 0 && dim) {
          a.pass = false;
          a.detail = "nonzero cohomology in degree " + std::to_string(n) + " at " + x->cell(c).id;
        }
    add(a);
  }
  // (b): nothing below degree 0
  for (int n = lo; n < 0; ++n) {
    AxiomCheck b{"b", 0, n, true, ""};
    for (int c = 0; c < x->size(); ++c)
      if (stalks[c].count(n)) {
        b.pass = false;
        b.detail = "stalk at " + x->cell(c).id;
        break;
      }
    add(b);
  }
  const Perversity q = complement(p);
  for (int kc : x->singular_codims()) {
    Selection s = stratum_selection(x, kc);
    const int thr = v == Variant::IC ? p.at(kc) : q.at(kc);
    for (int n = lo; n <= hi; ++n) {
      // (c): vanishing on the stratum
      AxiomCheck c{"c", kc, n, true, ""};
      bool must_vanish = v == Variant::IC ? n > thr : n <= thr;
      if (must_vanish)
        for (int cell : s.cells)
          if (stalks[cell].count(n)) {
            c.pass = false;
            c.detail = "stalk at " + x->cell(cell).id;
            break;
          }
      add(c);
      // (d): attaching map
      bool must_iso = v == Variant::IC ? n <= thr : n > thr;
      if (!must_iso) continue;
      AxiomCheck d{"d", kc, n, true, ""};
      for (int cell : s.cells) {
        std::map<int, std::vector<int>> full, part;
        for (int m = n - 1; m <= n + 1; ++m) {
          full[m] = k.stalk(cell, m);
          for (int g : full[m])
            if (x->codim(k.cell[g]) < kc) part[m].push_back(g);
        }
        auto [r, dims] = projection_on_cohomology(k, full, part, n);
        if (!(r == dims.first && r == dims.second)) {
          d.pass = false;
          d.detail = "at " + x->cell(cell).id + " rank " + std::to_string(r) + " between dims " +
                     std::to_string(dims.first) + " and " + std::to_string(dims.second);
          break;
        }
      }
      add(d);
    }
  }
  return rep;
}

AxiomReport check_axioms(const ComplexPtr& k, const Perversity& p, Variant v) {
  if (k->base.size() != k->base.parent->size()) throw InvalidInput("axiom check needs a complex on the whole space");
  return check_axioms(injective_model(k).inj, p, v);
}

// ---- splitting -----------------------------------------------------------

namespace {

// place blocks of a linear system
struct System {
  RatMatrix m;
  RatVector rhs;
  System(std::size_t rows, std::size_t cols) : m(rows, cols), rhs(rows) {}
};

RatVector unit_identity(const HomComplex& h) {
  // the tautological map I.to_sheaf() -> I in Hom^0
  const InjComplex& i = h.target();
  std::vector<RatVector> rows(i.size());
  for (int t = 0; t < i.size(); ++t) {
    int w = h.width(0, t);
    if (!w) continue;
    auto st = i.stalk(i.cell[t], i.degree[t]);
    rows[t].assign(w, Rational());
    auto pos = std::find(st.begin(), st.end(), t) - st.begin();
    rows[t][pos] = 1;
  }
  return h.pack(0, rows);
}

RatVector column_of(const RatMatrix& m, std::size_t j) { return m.column(j); }

RatVector slice(const RatVector& v, std::size_t from, std::size_t count) {
  return RatVector(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(from + count));
}

std::string coords_string(const RatVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out + ")";
}

// columns: x -> psi o x for x in phi_space^m, landing in out_space^m
RatMatrix postcompose_matrix(const HomComplex& psi_space, const RatVector& psi, const HomComplex& phi_space,
                             const HomComplex& out_space, int m) {
  const std::size_t n = static_cast<std::size_t>(phi_space.size(m));
  RatMatrix out(static_cast<std::size_t>(out_space.size(m)), n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n);
    e[j] = 1;
    out.set_column(j, postcompose(psi_space, psi, phi_space, m, e, out_space));
  }
  return out;
}

// Is [x] = 0 in H^m, i.e. x = d y?
bool is_coboundary(const RatMatrix& d_prev, const RatVector& x) {
  if (std::all_of(x.begin(), x.end(), [](const Rational& r) { return r.is_zero(); })) return true;
  if (d_prev.cols() == 0) return false;
  return solve_affine(d_prev, x).particular.has_value();
}

}  // namespace

RatVector SplittingData::retraction_at(const std::vector<Rational>& coords) const {
  if (coords.size() != linear_part.size())
    throw InvalidInput("expected " + std::to_string(linear_part.size()) + " retraction coordinates, got " +
                       std::to_string(coords.size()));
  RatVector out = retraction;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].is_zero()) continue;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (!linear_part[i][j].is_zero()) out[j] += coords[i] * linear_part[i][j];
  }
  return out;
}

SplittingData splitting_data(const ComplexPtr& b, int qbar) {
  SplittingData sd;
  sd.qbar = qbar;
  sd.b = b;
  sd.model_b = injective_model(b);
  sd.b_sheaf = sd.model_b.inj.to_sheaf();
  sd.low = truncate(sd.b_sheaf, qbar, Side::Le);
  sd.high = truncate(sd.b_sheaf, qbar, Side::Gt);
  sd.model_t = injective_model(sd.low.complex);
  const InjComplex& it = sd.model_t.inj;

  auto hb = std::make_shared<HomComplex>(sd.b_sheaf, it);
  HomComplex ht(sd.low.complex, it);
  HomComplex hq(sd.high.complex, it);
  sd.lambda_space = hb;

  // unknowns (lambda, h): d lambda = 0 and lambda o f - d h = phi_T
  const std::size_t nl = hb->size(0), nh = ht.size(-1), n1 = hb->size(1), n0t = ht.size(0);
  System sys(n1 + n0t, nl + nh);
  sys.m.set_block(0, 0, hb->differential(0));
  sys.m.set_block(n1, 0, hb->precompose(0, ht, sd.low.map));
  sys.m.set_block(n1, nl, ht.differential(-1).scaled(-1));
  RatVector phi_t = ht.pack(0, sd.model_t.phi);
  for (std::size_t i = 0; i < n0t; ++i) sys.rhs[n1 + i] = phi_t[i];
  AffineSolution sol = solve_affine(sys.m, sys.rhs);
  sd.split = sol.particular.has_value();

  CohomologyData h0 = cohomology(hq.differential(-1), hq.differential(0), hq.size(0));
  sd.ext1_dim = static_cast<int>(cohomology_dim(hq.differential(0), hq.differential(1), hq.size(1)));
  if (sd.split) {
    sd.retraction = slice(*sol.particular, 0, nl);
    sd.homotopy = slice(*sol.particular, nl, nh);
    RatMatrix push = hq.precompose(0, *hb, sd.high.map);
    for (std::size_t i = 0; i < h0.dim; ++i) sd.linear_part.push_back(push * column_of(h0.iota, i));
  } else {
    // class of T-component projection of cone(f), composed into I_T
    ConeResult c = cone(sd.low.map);
    HomComplex hc(c.cone, it);
    std::vector<RatVector> rows(it.size());
    for (int t = 0; t < it.size(); ++t) {
      int w = hc.width(1, t);
      if (!w) continue;
      rows[t].assign(w, Rational());
      const RatVector& ph = sd.model_t.phi[t];
      for (std::size_t i = 0; i < ph.size(); ++i) rows[t][i] = ph[i];
    }
    RatVector v = hc.pack(1, rows);
    CohomologyData h1 = cohomology(hc.differential(0), hc.differential(1), hc.size(1));
    sd.witness = "connecting class " + coords_string(h1.pi * v) + " in Ext^1 of dimension " + std::to_string(h1.dim);
  }
  return sd;
}

LemmaConditions lemma_conditions(const ComplexPtr& b, int qbar) {
  LemmaConditions lc;
  SplittingData sd = splitting_data(b, qbar);
  lc.retraction = sd.split;
  const InjComplex& ib = sd.model_b.inj;
  const InjComplex& it = sd.model_t.inj;
  const ComplexPtr& t = sd.low.complex;
  const ComplexPtr& q = sd.high.complex;
  InjectiveModel mq = injective_model(q);
  const InjComplex& iq = mq.inj;

  HomComplex hqq(q, iq), hbq(sd.b_sheaf, iq), hqb(q, ib);
  RatVector phi_q = hqq.pack(0, mq.phi);
  // G = Phi_Q o g in Hom^0(I_B, I_Q)
  RatVector g = hqq.precompose(0, hbq, sd.high.map) * phi_q;
  RatMatrix post = postcompose_matrix(hbq, g, hqb, hqq, 0);  // Hom^0(Q, I_B) -> Hom^0(Q, I_Q)

  // section: d s = 0, G o s - d h = phi_Q
  {
    const std::size_t ns = hqb.size(0), nh = hqq.size(-1), n1 = hqb.size(1), n0 = hqq.size(0);
    System sys(n1 + n0, ns + nh);
    sys.m.set_block(0, 0, hqb.differential(0));
    sys.m.set_block(n1, 0, post);
    sys.m.set_block(n1, ns, hqq.differential(-1).scaled(-1));
    for (std::size_t i = 0; i < n0; ++i) sys.rhs[n1 + i] = phi_q[i];
    lc.section = solve_affine(sys.m, sys.rhs).particular.has_value();
  }

  // decomposition: gamma: T + Q -> I_B restricting to f on T and to a section on Q
  {
    ComplexPtr tq = direct_sum(t, q);
    SheafMorphism in_t, in_q;
    in_t.source = t;
    in_t.target = tq;
    in_q.source = q;
    in_q.target = tq;
    for (int c : tq->base.cells)
      for (int n = tq->lo; n <= tq->hi(); ++n) {
        const std::size_t a = t->dim(n, c), bq = q->dim(n, c);
        const bool t_first = !t->terms.empty() && !q->terms.empty();
        RatMatrix mt(a + bq, a), mq2(a + bq, bq);
        if (t_first || q->terms.empty()) {
          for (std::size_t i = 0; i < a; ++i) mt(i, i) = 1;
          for (std::size_t i = 0; i < bq; ++i) mq2(a + i, i) = 1;
        } else {
          for (std::size_t i = 0; i < bq; ++i) mq2(i, i) = 1;
        }
        if (a) in_t.set(n, c, mt);
        if (bq) in_q.set(n, c, mq2);
      }
    HomComplex hd(tq, ib), htb(t, ib), hbb(sd.b_sheaf, ib);
    RatVector f_in_b = hbb.precompose(0, htb, sd.low.map) * unit_identity(hbb);
    const std::size_t ng = hd.size(0), nh1 = htb.size(-1), nh2 = hqq.size(-1);
    const std::size_t r1 = hd.size(1), r2 = htb.size(0), r3 = hqq.size(0);
    System sys(r1 + r2 + r3, ng + nh1 + nh2);
    sys.m.set_block(0, 0, hd.differential(0));
    sys.m.set_block(r1, 0, hd.precompose(0, htb, in_t));
    sys.m.set_block(r1, ng, htb.differential(-1).scaled(-1));
    sys.m.set_block(r1 + r2, 0, post * hd.precompose(0, hqb, in_q));
    sys.m.set_block(r1 + r2, ng + nh1, hqq.differential(-1).scaled(-1));
    for (std::size_t i = 0; i < r2; ++i) sys.rhs[r1 + i] = f_in_b[i];
    for (std::size_t i = 0; i < r3; ++i) sys.rhs[r1 + r2 + i] = phi_q[i];
    AffineSolution sol = solve_affine(sys.m, sys.rhs);
    if (sol.particular) {
      RatVector gamma = slice(*sol.particular, 0, ng);
      bool qi = true;
      for (int c : tq->base.cells) {
        for (int n = std::min(tq->lo, ib.lo()); n <= std::max(tq->hi(), ib.hi()) && qi; ++n) {
          CohomologyData hs = cohomology(tq->diff(n - 1, c), tq->diff(n, c), tq->dim(n, c));
          auto r0 = ib.stalk(c, n);
          CohomologyData ht2 = cohomology(ib.block(r0, ib.stalk(c, n - 1)), ib.block(ib.stalk(c, n + 1), r0), r0.size());
          if (hs.dim != ht2.dim) qi = false;
          else if (hs.dim && rank(ht2.pi * hd.stalk_map(0, gamma, c, n) * hs.iota) != hs.dim) qi = false;
        }
        if (!qi) break;
      }
      lc.decomposition = qi;
    }
  }

  // connecting class: Phi_T o pr is a coboundary in Hom^1(cone f, I_T)
  {
    ConeResult c = cone(sd.low.map);
    HomComplex hc(c.cone, it);
    std::vector<RatVector> rows(it.size());
    for (int tg = 0; tg < it.size(); ++tg) {
      int w = hc.width(1, tg);
      if (!w) continue;
      rows[tg].assign(w, Rational());
      RatMatrix pr = c.to_shift.at(it.degree[tg] - 1, it.cell[tg]);
      const RatVector& ph = sd.model_t.phi[tg];
      for (std::size_t j = 0; j < pr.cols(); ++j) {
        Rational acc;
        for (std::size_t i = 0; i < ph.size(); ++i) acc += ph[i] * pr(i, j);
        rows[tg][j] = acc;
      }
    }
    lc.connecting_zero = is_coboundary(hc.differential(0), hc.pack(1, rows));
  }
  return lc;
}

// ---- towers --------------------------------------------------------------

std::vector<Rational> generic_coordinates(int count, std::uint64_t seed, int codim) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(codim)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> dist(-10, 10);
  std::vector<Rational> out;
  for (int i = 0; i < count; ++i) out.emplace_back(dist(rng));
  return out;
}

std::vector<std::map<int, Rational>> lift_to_total(const InjComplex& c, const InjectiveModel* model,
                                                   const HomComplex& space, const RatVector& element) {
  const InjComplex& target = space.target();
  std::vector<std::map<int, Rational>> out(c.size());
  auto rows = space.unpack(0, element);
  std::map<std::pair<int, int>, RatMatrix> stalk_maps;
  for (int t = 0; t < target.size(); ++t) {
    if (rows[t].empty()) continue;
    const int tau = target.cell[t], n = target.degree[t];
    std::vector<int> gens = c.stalk(tau, n);
    RatVector hat = rows[t];
    if (model) {
      auto key = std::make_pair(tau, n);
      auto it = stalk_maps.find(key);
      if (it == stalk_maps.end()) it = stalk_maps.emplace(key, model->stalk_map(tau, n)).first;
      const RatMatrix& sm = it->second;
      hat.assign(sm.cols(), Rational());
      for (std::size_t i = 0; i < sm.rows(); ++i) {
        if (rows[t][i].is_zero()) continue;
        for (std::size_t j = 0; j < sm.cols(); ++j)
          if (!sm(i, j).is_zero()) hat[j] += rows[t][i] * sm(i, j);
      }
    }
    if (hat.size() != gens.size()) throw InvariantViolation("stratum model does not match the ambient stalk");
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (!hat[j].is_zero()) out[gens[j]][t] = hat[j];
  }
  return out;
}

InjComplex shifted_cone(const InjComplex& c, const InjComplex& target,
                        const std::vector<std::map<int, Rational>>& map, const Selection& base) {
  InjComplex out;
  out.base = base;
  for (int g = 0; g < c.size(); ++g) out.add(c.cell[g], c.degree[g]);
  const int off = c.size();
  for (int t = 0; t < target.size(); ++t) out.add(target.cell[t], target.degree[t] + 1);
  for (int g = 0; g < c.size(); ++g) {
    out.col[g] = c.col[g];
    for (const auto& [t, v] : map[g]) out.col[g][off + t] = -v;
  }
  for (int t = 0; t < target.size(); ++t)
    for (const auto& [u, v] : target.col[t]) out.col[off + t][off + u] = -v;
  return out;
}

InjComplex constant_model(const PosetPtr& x) {
  return injective_model(constant_sheaf(open_complement(x, 2), 0)).inj;
}

namespace {

InjComplex rebased(const InjComplex& k, const Selection& base) {
  InjComplex out = k;
  out.base = base;
  return out;
}

}  // namespace

StepResult build_is_step(const InjComplex& prev, const PosetPtr& x, const Perversity& p, int r,
                         const RetractionChoice& choice) {
  StepResult res;
  res.step.codim = r;
  res.step.qbar = complement(p).at(r);
  Selection next = open_complement(x, r + 1);
  Selection z = stratum_selection(x, r);
  if (z.cells.empty()) {
    res.complex = rebased(prev, next);
    return res;
  }
  auto sd = std::make_shared<SplittingData>(splitting_data(prev.sheaf_on(z), res.step.qbar));
  if (!sd->split) throw ObstructionNonzero(r, sd->ext1_dim, sd->witness);
  auto it = choice.coords.find(r);
  res.step.coords = it != choice.coords.end() ? it->second
                                              : generic_coordinates(sd->linear_part_dim(), choice.seed, r);
  RatVector lambda = sd->retraction_at(res.step.coords);
  auto map = lift_to_total(prev, &sd->model_b, *sd->lambda_space, lambda);
  res.complex = shifted_cone(prev, sd->model_t.inj, map, next);
  res.step.betti = res.complex.hypercohomology();
  res.step.split = sd;
  return res;
}

ISTower build_is(const PosetPtr& x, const Perversity& p, const RetractionChoice& choice) {
  ISTower tower;
  tower.space = x;
  tower.perversity = p;
  tower.seed = choice.seed;
  InjComplex k = constant_model(x);
  tower.top = k;
  for (int r : x->singular_codims()) {
    StepResult s = build_is_step(k, x, p, r, choice);
    k = std::move(s.complex);
    tower.steps.push_back(std::move(s.step));
  }
  if (k.base.size() != x->size()) k = rebased(k, full_selection(x));
  tower.complex = std::move(k);
  return tower;
}

ISTower build_is(const AttachedModel& m, const Perversity& p, const RetractionChoice& choice) {
  ISTower tower;
  tower.space = m.space;
  tower.perversity = p;
  tower.seed = choice.seed;
  TowerStep step;
  step.codim = m.codim;
  step.qbar = complement(p).at(m.codim);
  auto sd = std::make_shared<SplittingData>(splitting_data(m.model, step.qbar));
  if (!sd->split) throw ObstructionNonzero(m.codim, sd->ext1_dim, sd->witness);
  auto it = choice.coords.find(m.codim);
  step.coords = it != choice.coords.end() ? it->second
                                          : generic_coordinates(sd->linear_part_dim(), choice.seed, m.codim);
  sd->retraction_at(step.coords);  // validates the count
  step.split = sd;
  tower.steps.push_back(std::move(step));
  return tower;
}

InjComplex build_ic(const PosetPtr& x, const Perversity& p, bool truncate_model) {
  InjComplex k = constant_model(x);
  for (int r : x->singular_codims()) {
    Selection next = open_complement(x, r + 1);
    Selection z = stratum_selection(x, r);
    ComplexPtr b = k.sheaf_on(z);
    std::optional<InjectiveModel> mb;
    ComplexPtr src = b;
    if (truncate_model) {
      mb = injective_model(b);
      src = mb->inj.to_sheaf();
    }
    Truncation high = truncate(src, p.at(r), Side::Gt);
    InjectiveModel mq = injective_model(high.complex);
    HomComplex hqq(high.complex, mq.inj), hsq(src, mq.inj);
    RatVector g = hqq.precompose(0, hsq, high.map) * hqq.pack(0, mq.phi);
    auto map = lift_to_total(k, mb ? &*mb : nullptr, hsq, g);
    k = shifted_cone(k, mq.inj, map, next);
  }
  if (k.base.size() != x->size()) k = rebased(k, full_selection(x));
  return k;
}

}  // namespace isc
