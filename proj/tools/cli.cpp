#include "cli.hpp"

#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "isc/bettidual.hpp"
#include "isc/errors.hpp"
#include "isc/io.hpp"
#include "isc/istower.hpp"
#include "isc/models.hpp"
#include "isc/obstruction.hpp"
#include "json.hpp"

namespace isc {

using nlohmann::json;

namespace {

PosetPtr share(StratifiedPoset p) { return std::make_shared<const StratifiedPoset>(std::move(p)); }

// ---- built-in fixtures ---------------------------------------------------

struct SheafFixture {
  std::string space;
  std::function<ComplexPtr(const PosetPtr&)> make;
};

const std::map<std::string, std::function<StratifiedPoset()>>& space_fixtures() {
  static const std::map<std::string, std::function<StratifiedPoset()>> m{
      {"s2", [] { return boundary_simplex(3); }},
      {"circle", [] { return cycle_graph(3); }},
      {"cone-c3", [] { return cone_space(cycle_graph(3)); }},
      {"cone-t2", [] { return cone_space(torus7()); }},
      {"s1-sigma-t2", [] { return product_space(cycle_graph(3), suspension(torus7())); }},
      {"cp2", [] { return cp2_9(); }},
      {"hopf-x", [] { return product_space(boundary_simplex(3), cone_space(cycle_graph(3))); }},
      {"torus-x", [] { return product_space(boundary_simplex(3), cone_space(torus7())); }},
  };
  return m;
}

const std::map<std::string, SheafFixture>& sheaf_fixtures() {
  static const std::map<std::string, SheafFixture> m{
      {"constant-s2", {"s2", [](const PosetPtr& x) { return constant_sheaf(full_selection(x), 0); }}},
      {"hopf", {"s2", [](const PosetPtr& x) {
                  return sphere_bundle_pushforward({x, 1, generator_cocycle(*x, 2)});
                }}},
      {"torus-bundle", {"s2", [](const PosetPtr& x) {
                          auto e = generator_cocycle(*x, 2);
                          return torus_bundle_pushforward(x, e, e);
                        }}},
      {"cp2-euler", {"cp2", [](const PosetPtr& x) {
                       return sphere_bundle_pushforward({x, 3, generator_cocycle(*x, 4)});
                     }}},
      {"hopf-x-model", {"hopf-x", [](const PosetPtr& x) {
                          auto s2 = share(boundary_simplex(3));
                          return attach_stratum_model(x, 2,
                                                      sphere_bundle_pushforward({s2, 1, generator_cocycle(*s2, 2)}))
                              .model;
                        }}},
      {"torus-x-model", {"torus-x", [](const PosetPtr& x) {
                           auto s2 = share(boundary_simplex(3));
                           auto e = generator_cocycle(*s2, 2);
                           return attach_stratum_model(x, 3, torus_bundle_pushforward(s2, e, e)).model;
                         }}},
  };
  return m;
}

// ---- report helpers ------------------------------------------------------

json betti_json(const GradedDims& g, int lo, int hi) {
  json b = json::object();
  for (const auto& [n, v] : g) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  for (int n = lo; n <= hi; ++n) {
    auto it = g.find(n);
    b[std::to_string(n)] = it == g.end() ? 0 : it->second;
  }
  return b;
}

std::string betti_csv(const GradedDims& g, int lo, int hi) {
  std::string out = "degree,dim\n";
  for (const auto& [n, v] : g) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  for (int n = lo; n <= hi; ++n) {
    auto it = g.find(n);
    out += std::to_string(n) + "," + std::to_string(it == g.end() ? 0 : it->second) + "\n";
  }
  return out;
}

std::string betti_ascii(const GradedDims& g, int lo, int hi) {
  std::string out = "degree:";
  std::string dims = "dim:   ";
  for (const auto& [n, v] : g) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  for (int n = lo; n <= hi; ++n) {
    auto it = g.find(n);
    std::string a = std::to_string(n), b = std::to_string(it == g.end() ? 0 : it->second);
    std::size_t w = std::max(a.size(), b.size()) + 1;
    out += std::string(w - a.size(), ' ') + a;
    dims += std::string(w - b.size(), ' ') + b;
  }
  return out + "\n" + dims + "\n";
}

json coords_json(const std::vector<Rational>& c) {
  json a = json::array();
  for (const auto& r : c) a.push_back(r.str());
  return a;
}

json base_report(const std::string& command, std::uint64_t seed) {
  return json{{"command", command}, {"verdict", ""},          {"witnesses", json::array()}, {"betti", json::object()},
              {"ext1_dim", 0},      {"linear_part_dim", 0}, {"seed", seed}};
}

struct Options {
  std::string space, sheaf, perversity, format = "json", out, variant = "is", against, name;
  int qbar = 0, samples = 20, rmax = 0;
  std::uint64_t seed = 0;
  bool list = false;
};

struct Output {
  std::string text;
  int code = 0;
};

int space_dmax(const StratifiedPoset& x) { return std::max(2, x.dim()); }

PosetPtr load_space_ptr(const Options& o) {
  if (o.space.empty()) throw InvalidInput("--space is required");
  return share(load_space(o.space));
}

ComplexPtr load_sheaf_or_constant(const Options& o, const PosetPtr& x) {
  if (o.sheaf.empty()) return constant_sheaf(full_selection(x), 0);
  return load_sheaf(o.sheaf, x);
}

Perversity perversity_of(const Options& o, const StratifiedPoset& x) {
  if (o.perversity.empty()) throw InvalidInput("--perversity is required");
  return Perversity::parse(o.perversity, space_dmax(x));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- commands ------------------------------------------------------------

Output run_check(const Options& o) {
  auto x = load_space_ptr(o);
  auto k = load_sheaf_or_constant(o, x);
  Perversity p = perversity_of(o, *x);
  if (o.variant != "is" && o.variant != "ic") throw InvalidInput("--variant must be ic or is");
  Variant v = o.variant == "ic" ? Variant::IC : Variant::IS;
  AxiomReport rep = check_axioms(k, p, v);
  json r = base_report("check", o.seed);
  r["verdict"] = rep.pass ? "PASS" : "FAIL";
  r["variant"] = o.variant;
  r["perversity"] = p.str();
  r["betti"] = betti_json(hypercohomology(*k), 0, x->dim());
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"axiom", c.axiom}, {"codim", c.codim}, {"degree", c.degree}, {"pass", c.pass}, {"detail", c.detail}});
  r["axioms"] = checks;
  Output out{"", rep.pass ? 0 : 2};
  if (o.format == "json") out.text = dump(r);
  else if (o.format == "csv") {
    out.text = "axiom,codim,degree,pass\n";
    for (const auto& c : rep.checks)
      out.text += c.axiom + "," + std::to_string(c.codim) + "," + std::to_string(c.degree) + "," + (c.pass ? "1" : "0") + "\n";
  } else {
    out.text = std::string("axioms (") + o.variant + ", " + p.str() + "): " + (rep.pass ? "PASS" : "FAIL") + "\n";
    for (const auto& f : rep.failures()) out.text += "  " + f + "\n";
  }
  return out;
}

Output betti_output(const Options& o, const json& r, const GradedDims& g, int dim, const std::string& header) {
  Output out;
  if (o.format == "json") out.text = dump(r);
  else if (o.format == "csv") out.text = betti_csv(g, 0, dim);
  else out.text = header + "\n" + betti_ascii(g, 0, dim);
  return out;
}

Output run_ic(const Options& o) {
  auto x = load_space_ptr(o);
  Perversity p = perversity_of(o, *x);
  InjComplex ic = build_ic(x, p);
  GradedDims h = ic.hypercohomology();
  json r = base_report("ic", o.seed);
  r["verdict"] = "EXISTS";
  r["perversity"] = p.str();
  r["betti"] = betti_json(h, 0, x->dim());
  return betti_output(o, r, h, x->dim(), "IC hypercohomology, perversity " + p.str());
}

json step_json(const TowerStep& s) {
  json j{{"codim", s.codim}, {"qbar", s.qbar}, {"coords", coords_json(s.coords)}};
  if (s.split) {
    j["split"] = s.split->split;
    j["ext1_dim"] = s.split->ext1_dim;
    j["linear_part_dim"] = s.split->linear_part_dim();
  }
  j["betti"] = betti_json(s.betti, 0, 0);
  return j;
}

Output obstructed_output(const Options& o, json r, const ObstructionNonzero& e) {
  r["verdict"] = "OBSTRUCTED";
  r["witnesses"].push_back({{"codim", e.codim}, {"detail", e.witness}});
  r["ext1_dim"] = e.ext1_dim;
  Output out{"", 2};
  if (o.format == "json") out.text = dump(r);
  else if (o.format == "csv") out.text = "codim,ext1_dim\n" + std::to_string(e.codim) + "," + std::to_string(e.ext1_dim) + "\n";
  else out.text = "OBSTRUCTED at codimension " + std::to_string(e.codim) + ": " + e.witness + "\n";
  return out;
}

Output run_is(const Options& o) {
  auto x = load_space_ptr(o);
  Perversity p = perversity_of(o, *x);
  json r = base_report("is", o.seed);
  r["perversity"] = p.str();
  RetractionChoice choice{{}, o.seed};
  try {
    ISTower t;
    if (!o.sheaf.empty()) {
      auto model = load_sheaf(o.sheaf, *&x);
      if (model->base.cells.empty()) throw InvalidInput("stratum model is empty");
      int codim = x->codim(model->base.cells.front());
      Selection z = stratum_selection(x, codim);
      if (z.cells != model->base.cells) throw InvalidInput("stratum mismatch: model cells are not one stratum");
      t = build_is(AttachedModel{x, codim, model}, p, choice);
    } else {
      t = build_is(x, p, choice);
    }
    r["verdict"] = "EXISTS";
    json steps = json::array();
    int ext1 = 0, lin = 0;
    for (const auto& s : t.steps) {
      steps.push_back(step_json(s));
      if (s.split) {
        ext1 += s.split->ext1_dim;
        lin += s.split->linear_part_dim();
      }
    }
    r["steps"] = steps;
    r["ext1_dim"] = ext1;
    r["linear_part_dim"] = lin;
    r["materialized"] = t.complex.has_value();
    GradedDims h;
    if (t.complex) {
      h = hyper_betti(t).dims;
      r["betti"] = betti_json(h, 0, x->dim());
    }
    return betti_output(o, r, h, x->dim(), "IS hypercohomology, perversity " + p.str() + ", seed " + std::to_string(o.seed));
  } catch (const ObstructionNonzero& e) {
    return obstructed_output(o, r, e);
  }
}

Output run_obstruct(const Options& o) {
  auto x = load_space_ptr(o);
  auto k = load_sheaf_or_constant(o, x);
  if (o.qbar < 0) throw InvalidInput("--qbar must be nonnegative");
  ObstructionReport rep = obstruction_scan(*k, o.qbar);
  json r = base_report("obstruct", o.seed);
  r["verdict"] = to_string(rep.verdict);
  r["qbar"] = o.qbar;
  r["last_page"] = rep.last_page;
  for (const auto& w : rep.witnesses) r["witnesses"].push_back({{"r", w.r}, {"p", w.p}, {"q", w.q}, {"rank", w.rank}});
  GradedDims h = hypercohomology(*k);
  r["betti"] = betti_json(h, 0, 0);
  Output out{"", rep.verdict == ScanVerdict::Obstructed ? 2 : 0};
  if (o.format == "json") out.text = dump(r);
  else if (o.format == "csv") {
    out.text = "r,p,q,rank\n";
    for (const auto& w : rep.witnesses)
      out.text += std::to_string(w.r) + "," + std::to_string(w.p) + "," + std::to_string(w.q) + "," + std::to_string(w.rank) + "\n";
  } else {
    out.text = to_string(rep.verdict) + " (qbar " + std::to_string(o.qbar) + ")\n";
    for (const auto& w : rep.witnesses)
      out.text += "  d_" + std::to_string(w.r) + "^{" + std::to_string(w.p) + "," + std::to_string(w.q) + "} rank " +
                  std::to_string(w.rank) + "\n";
  }
  return out;
}

Output run_ss(const Options& o) {
  auto x = load_space_ptr(o);
  auto k = load_sheaf_or_constant(o, x);
  SpectralSequence ss(*k);
  const int last = o.rmax > 0 ? o.rmax : ss.bound() + 1;
  if (last < 2) throw InvalidInput("--rmax must be at least 2");
  json r = base_report("ss", o.seed);
  r["verdict"] = "CONVERGED";
  r["betti"] = betti_json(ss.abutment(), 0, 0);
  r["stable_page"] = ss.stable_page();
  json pages = json::array();
  std::string ascii, csv = "r,p,q,dim,rank\n";
  for (int pr = 2; pr <= last; ++pr) {
    SpectralPage pg = ss.page(pr);
    json entries = json::array(), diffs = json::array();
    for (const auto& [pq, v] : pg.entries) {
      entries.push_back(json::array({pq.first, pq.second, v}));
      int rk = 0;
      if (auto it = pg.differentials.find(pq); it != pg.differentials.end()) rk = static_cast<int>(rank(it->second));
      csv += std::to_string(pr) + "," + std::to_string(pq.first) + "," + std::to_string(pq.second) + "," +
             std::to_string(v) + "," + std::to_string(rk) + "\n";
    }
    for (const auto& [pq, m] : pg.differentials)
      diffs.push_back(json::array({pq.first, pq.second, static_cast<int>(rank(m))}));
    pages.push_back({{"r", pr}, {"entries", entries}, {"differential_ranks", diffs}});
    ascii += ascii_page(pg) + "\n";
  }
  r["pages"] = pages;
  Output out;
  out.text = o.format == "json" ? dump(r) : o.format == "csv" ? csv : ascii;
  return out;
}

json profile_json(const BettiProfile& b, int dim) {
  json ranks = json::object();
  for (const auto& [n, v] : b.alpha_ranks) ranks[std::to_string(n)] = v;
  return {{"betti", betti_json(b.dims, 0, dim)}, {"alpha_ranks", ranks}, {"sample_id", b.sample_id}};
}

Output run_betti(const Options& o) {
  auto x = load_space_ptr(o);
  Perversity p = perversity_of(o, *x);
  json r = base_report("betti", o.seed);
  r["perversity"] = p.str();
  try {
    GenericBetti g = generic_betti(x, p, o.samples, o.seed);
    r["verdict"] = "GENERIC";
    r["betti"] = betti_json(g.minimum.dims, 0, x->dim());
    r["linear_part_dim"] = g.parameters;
    r["samples"] = o.samples;
    r["attained"] = g.attained;
    r["minimum"] = profile_json(g.minimum, x->dim());
    json all = json::array();
    for (const auto& s : g.samples) all.push_back(profile_json(s, x->dim()));
    r["profiles"] = all;
    return betti_output(o, r, g.minimum.dims, x->dim(),
                        "generic IS Betti numbers, perversity " + p.str() + " (" + std::to_string(g.attained) + "/" +
                            std::to_string(o.samples) + " samples at the minimum)");
  } catch (const ObstructionNonzero& e) {
    return obstructed_output(o, r, e);
  }
}

Output run_duality(const Options& o) {
  auto x = load_space_ptr(o);
  Perversity p = perversity_of(o, *x);
  Perversity q = o.against.empty() ? complement(p) : Perversity::parse(o.against, space_dmax(*x));
  json r = base_report("duality", o.seed);
  try {
    DualityReport rep = duality_check(x, p, q, o.samples, o.seed);
    r["verdict"] = rep.pass ? "PASS" : "FAIL";
    r["perversity"] = p.str();
    r["against"] = q.str();
    r["dim"] = rep.dim;
    r["betti"] = betti_json(rep.profile_p.dims, 0, rep.dim);
    r["betti_against"] = betti_json(rep.profile_q.dims, 0, rep.dim);
    r["mismatched_degrees"] = rep.mismatched_degrees;
    Output out{"", rep.pass ? 0 : 2};
    if (o.format == "json") out.text = dump(r);
    else if (o.format == "csv") {
      out.text = "degree,dim_p,dim_q_mirrored\n";
      for (int i = 0; i <= rep.dim; ++i)
        out.text += std::to_string(i) + "," + std::to_string(rep.profile_p.at(i)) + "," +
                    std::to_string(rep.profile_q.at(rep.dim - i)) + "\n";
    } else {
      out.text = std::string("duality ") + p.str() + " vs " + q.str() + ": " + (rep.pass ? "PASS" : "FAIL") + "\n" +
                 betti_ascii(rep.profile_p.dims, 0, rep.dim) + betti_ascii(rep.profile_q.dims, 0, rep.dim);
    }
    return out;
  } catch (const ObstructionNonzero& e) {
    return obstructed_output(o, r, e);
  }
}

Output run_fixture(const Options& o) {
  Output out;
  if (o.list) {
    for (const auto& n : fixture_names()) out.text += n + "\n";
    return out;
  }
  if (o.name.empty()) throw InvalidInput("fixture name required (see --list)");
  if (auto it = space_fixtures().find(o.name); it != space_fixtures().end()) {
    out.text = space_to_json(it->second());
    return out;
  }
  auto it = sheaf_fixtures().find(o.name);
  if (it == sheaf_fixtures().end()) throw InvalidInput("unknown fixture '" + o.name + "'");
  auto x = share(space_fixtures().at(it->second.space)());
  out.text = sheaf_to_json(*it->second.make(x), it->second.space + ".json");
  return out;
}

void add_common(CLI::App* c, Options& o, bool sheaf, bool perversity) {
  c->add_option("--space", o.space, "space JSON file")->required();
  if (sheaf) c->add_option("--sheaf", o.sheaf, "sheaf complex JSON file");
  if (perversity) c->add_option("--perversity", o.perversity, "zero|total|lower-middle|upper-middle or k:v,k:v")->required();
  c->add_option("--seed", o.seed, "seed for generic choices");
  c->add_option("--format", o.format, "json|csv|ascii")->check(CLI::IsMember({"json", "csv", "ascii"}));
  c->add_option("--out", o.out, "write the report here instead of stdout");
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [n, f] : space_fixtures()) out.push_back(n);
  for (const auto& [n, f] : sheaf_fixtures()) out.push_back(n);
  return out;
}

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Intersection space complexes on stratified cell complexes"};
  app.name("isc");
  app.require_subcommand(1);
  auto* check = app.add_subcommand("check", "check the IC or IS axioms for a sheaf complex");
  add_common(check, o, true, true);
  check->add_option("--variant", o.variant, "ic|is");
  auto* ic = app.add_subcommand("ic", "build the intersection cohomology complex");
  add_common(ic, o, false, true);
  auto* is = app.add_subcommand("is", "build an intersection space complex (or test a stratum model)");
  add_common(is, o, true, true);
  auto* ob = app.add_subcommand("obstruct", "scan spectral-sequence differentials in the window above qbar");
  add_common(ob, o, true, false);
  ob->add_option("--qbar", o.qbar, "truncation degree")->required();
  auto* ss = app.add_subcommand("ss", "print the pages of the local-to-global spectral sequence");
  add_common(ss, o, true, false);
  ss->add_option("--rmax", o.rmax, "last page (default: past the filtration length)");
  auto* be = app.add_subcommand("betti", "generic Betti numbers of intersection space complexes");
  add_common(be, o, false, true);
  be->add_option("--samples", o.samples, "number of sampled retractions");
  auto* du = app.add_subcommand("duality", "compare generic Betti numbers for complementary perversities");
  add_common(du, o, false, true);
  du->add_option("--samples", o.samples, "number of sampled retractions");
  du->add_option("--against", o.against, "compare with this perversity instead of the complement");
  auto* fx = app.add_subcommand("fixture", "write a built-in space or sheaf as JSON");
  fx->add_option("name", o.name, "fixture name");
  fx->add_flag("--list", o.list, "list fixture names");
  fx->add_option("--out", o.out, "output file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o1, o2;
    int rc = app.exit(e, o1, o2);
    out << o1.str();
    err << o2.str();
    return rc == 0 ? 0 : 3;
  }
  try {
    Output res;
    if (*check) res = run_check(o);
    else if (*ic) res = run_ic(o);
    else if (*is) res = run_is(o);
    else if (*ob) res = run_obstruct(o);
    else if (*ss) res = run_ss(o);
    else if (*be) res = run_betti(o);
    else if (*du) res = run_duality(o);
    else res = run_fixture(o);
    if (o.out.empty()) out << res.text;
    else write_file(o.out, res.text);
    return res.code;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const MinimumUnstable& e) {
    err << "generic minimum not confirmed: " << e.what() << " (raise --samples)\n";
    return 3;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace isc
