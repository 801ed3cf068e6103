#include "dlat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <variant>

#include "dlat/bonds.hpp"
#include "dlat/dpoly.hpp"
#include "dlat/dspace.hpp"
#include "dlat/errors.hpp"
#include "dlat/gencycle.hpp"
#include "dlat/planar.hpp"

namespace dlat::cli {

namespace {

using io::json;

struct Options {
  std::string input;
  std::string p, c, x, y, delta, tree, mu, supports;
  std::vector<std::size_t> pins;
  std::size_t pin = 1;
  std::uint64_t seed = 0;
  std::optional<std::size_t> cap;
  bool dot = false;
  std::string output;
  std::size_t trials = 200;
  std::size_t samples = 100;
};

struct Result {
  int code = kSuccess;
  json body;
  std::optional<std::string> text;  // DOT output replaces the JSON body
};

// Values given to --p, --x, ... are file paths, or inline JSON when they start
// with '[' or '{'.
json load(const std::string& value) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (value[first] == '[' || value[first] == '{')) {
    return io::parse_json(value, "<argument>");
  }
  return io::read_json_file(value);
}

json need(const std::string& value, const char* flag) {
  if (value.empty()) throw ParseError(std::string("missing required option ") + flag);
  return load(value);
}

BondSystem bond_system_from_json(const json& j) {
  ArcParamDigraph g = io::graph_from_json(j);
  const char* key = j.contains("upper") ? "upper" : "c";
  if (!j.contains(key)) throw ParseError("bond system: missing field \"upper\"");
  RatVector upper = io::vector_from_json(j.at(key));
  std::optional<RatVector> lower;
  if (j.contains("lower")) lower = io::vector_from_json(j.at("lower"));
  try {
    return BondSystem(std::move(g), std::move(upper), std::move(lower));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("bond system: ") + e.what());
  }
}

DeltaSpec delta_spec_from_json(const json& j) {
  DeltaSpec spec;
  if (!j.is_array()) throw ParseError("balances must be an array of {\"signs\", \"value\"}");
  for (const json& e : j) {
    const auto signs = e.at("signs").get<std::vector<int>>();
    spec[SignedArcSet(signs).canonical()] = io::rat_from_json(e.at("value"));
  }
  return spec;
}

Result check_distributive(const Options& o) {
  const json in = io::read_json_file(o.input);
  const HPolyhedron h = in.contains("A") ? io::hpoly_from_json(in) : to_hpolyhedron(io::dpoly_from_json(in));
  if (auto net = recognize_network_form(h)) {
    return {kSuccess, {{"recognized", true}, {"refuted", false}, {"network", io::to_json(*net)}}, {}};
  }
  const SampleResult sampled = sample_distributivity(h, o.trials, o.seed);
  if (const auto* r = std::get_if<Refuted>(&sampled)) {
    json witness = {{"x", io::to_json(r->x)}, {"y", io::to_json(r->y)}, {"outside", r->max_fails ? "max" : "min"}};
    return {kNegative, {{"recognized", false}, {"refuted", true}, {"witness", witness}}, {}};
  }
  const auto& none = std::get<NoRefutation>(sampled);
  return {kSuccess, {{"recognized", false}, {"refuted", false}, {"members_sampled", none.members_sampled}}, {}};
}

Result nnd_basis_cmd(const Options& o) {
  const AffineSubspace s = io::affine_from_json(io::read_json_file(o.input));
  const NNDResult r = nnd_basis(s, o.cap.value_or(kDefaultDimensionCap));
  if (const auto* b = std::get_if<NNDBasis>(&r)) {
    json body = io::to_json(*b);
    body["distributive"] = true;
    return {kSuccess, body, {}};
  }
  const auto& w = std::get<NotDistributive>(r);
  json witness = {{"x", io::to_json(w.x)}, {"y", io::to_json(w.y)}, {"max", io::to_json(componentwise_max(w.x, w.y))}};
  return {kNegative, {{"distributive", false}, {"witness", witness}}, {}};
}

Result netmatrix_cmd(const Options& o) {
  const json in = io::read_json_file(o.input);
  NNDBasis b;
  for (const json& v : in.at("basis")) b.vectors.push_back(io::vector_from_json(v));
  b.dimension = in.contains("n") ? in.at("n").get<std::size_t>() : (b.vectors.empty() ? 0 : b.vectors[0].size());
  for (const RatVector& v : b.vectors) {
    if (v.size() != b.dimension) throw ParseError("basis vectors must have length n");
  }
  if (!is_nnd(b.vectors)) throw PreconditionError("basis is not nonnegative with disjoint supports");
  return {kSuccess, {{"graph", io::to_json(netmatrix_from_nnd(b))}}, {}};
}

DPolyhedron dpoly_with_overrides(const Options& o, const json& in) {
  json merged = in;
  if (!o.c.empty()) merged["c"] = load(o.c);
  return io::dpoly_from_json(merged);
}

Result member_cmd(const Options& o) {
  const json in = io::read_json_file(o.input);
  const RatVector p = io::vector_from_json(need(o.p, "--p"));
  const bool is_member = in.contains("A") ? member(io::hpoly_from_json(in), p) : member(dpoly_with_overrides(o, in), p);
  return {is_member ? kSuccess : kNegative, {{"member", is_member}}, {}};
}

Result lattice_op_cmd(const Options& o, bool is_join) {
  const DPolyhedron poly = dpoly_with_overrides(o, io::read_json_file(o.input));
  const RatVector x = io::vector_from_json(need(o.x, "--x"));
  const RatVector y = io::vector_from_json(need(o.y, "--y"));
  const RatVector r = is_join ? join(poly, x, y) : meet(poly, x, y);
  return {kSuccess, {{"result", io::to_json(r)}}, {}};
}

std::optional<std::vector<std::size_t>> pins_of(const Options& o) {
  if (o.pins.empty()) return std::nullopt;
  return o.pins;
}

Result reduce_cmd(const Options& o) {
  const ReducedSystem r = reduce(bond_system_from_json(io::read_json_file(o.input)), pins_of(o));
  return {kSuccess, {{"kernel", io::to_json(r.kernel)}, {"pins", r.pins}, {"augmented", io::to_json(r.augmented)}}, {}};
}

Result bond_cmd(const Options& o) {
  const json in = io::read_json_file(o.input);
  const ArcParamDigraph g = io::graph_from_json(in);
  const RatVector p = io::vector_from_json(need(o.p, "--p"));
  const RatVector x = bond_of_potential(g, p);
  json body = {{"bond", io::to_json(x)}};
  if (in.contains("upper") || in.contains("c")) body["feasible"] = is_feasible_bond(bond_system_from_json(in), x);
  return {kSuccess, body, {}};
}

Result potential_cmd(const Options& o) {
  const ReducedSystem r = reduce(bond_system_from_json(io::read_json_file(o.input)), pins_of(o));
  const RatVector x = io::vector_from_json(need(o.x, "--x"));
  return {kSuccess, {{"potential", io::to_json(potential_of_bond(r, x))}, {"pins", r.pins}}, {}};
}

struct DeltaInput {
  ArcParamDigraph graph;
  RatVector lower;
  RatVector upper;
  RatVector delta;
  std::optional<std::vector<std::size_t>> tree;
};

DeltaInput delta_input(const Options& o) {
  const json in = io::read_json_file(o.input);
  const BondSystem s = bond_system_from_json(in);
  if (!s.lower) throw ParseError("Delta-bond system needs \"lower\" capacities");
  DeltaInput d{s.graph, *s.lower, s.upper, {}, {}};
  if (!o.delta.empty()) {
    d.delta = io::vector_from_json(load(o.delta));
  } else if (in.contains("delta")) {
    d.delta = io::vector_from_json(in.at("delta"));
  }
  if (!o.tree.empty()) {
    d.tree = load(o.tree).get<std::vector<std::size_t>>();
  } else if (in.contains("tree")) {
    d.tree = in.at("tree").get<std::vector<std::size_t>>();
  }
  return d;
}

Result delta_translate_cmd(const Options& o) {
  const DeltaInput in = delta_input(o);
  const DeltaTranslation t = delta_translate(in.graph, in.lower, in.upper, in.delta, in.tree);
  return {kSuccess,
          {{"tree", t.tree},
           {"shift", io::to_json(t.shift)},
           {"lower", io::to_json(t.lower)},
           {"upper", io::to_json(t.upper)}},
          {}};
}

Result lattice_enum_cmd(const Options& o) {
  const DeltaInput in = delta_input(o);
  IntegralBondOptions opts;
  opts.cap = o.cap.value_or(kDefaultLatticeCap);
  opts.tree = in.tree;
  opts.pin = o.pin;
  const IntegralBondLattice l = enumerate_integral_bonds(in.graph, in.lower, in.upper, in.delta, opts);
  if (o.dot) return {kSuccess, nullptr, io::lattice_to_dot(l)};
  json elements = json::array();
  json potentials = json::array();
  for (const RatVector& x : l.bonds) elements.push_back(io::to_json(x));
  for (const RatVector& p : l.potentials) potentials.push_back(io::to_json(p));
  json covers = json::array();
  for (const auto& [lo, hi] : l.covers) covers.push_back({lo, hi});
  return {kSuccess, {{"elements", elements}, {"potentials", potentials}, {"covers", covers}}, {}};
}

Result cycles_cmd(const Options& o) {
  const ArcParamDigraph g = io::graph_from_json(io::read_json_file(o.input));
  const auto supports = enumerate_comb_support(g, o.cap.value_or(kDefaultCycleCap));
  if (o.dot) return {kSuccess, nullptr, io::supports_to_dot(g, supports)};
  json list = json::array();
  for (const CombSupport& h : supports) list.push_back(io::to_json(g, h));
  return {kSuccess, {{"supports", list}}, {}};
}

Result balance_cmd(const Options& o) {
  const ArcParamDigraph g = io::graph_from_json(io::read_json_file(o.input));
  const RatVector x = io::vector_from_json(need(o.x, "--x"));
  if (x.size() != g.arc_count()) throw ParseError("--x needs one entry per arc");
  json list = json::array();
  bool all_zero = true;
  for (const CombSupport& h : enumerate_comb_support(g, o.cap.value_or(kDefaultCycleCap))) {
    const Rat b = bicircular_balance(h, x);
    all_zero = all_zero && sgn(b) == 0;
    list.push_back({{"signs", io::to_json(h.signs)}, {"balance", io::to_json(b)}});
  }
  return {kSuccess, {{"balances", list}, {"in_image", all_zero}}, {}};
}

Result is_bond_cmd(const Options& o) {
  const json in = io::read_json_file(o.input);
  const ArcParamDigraph g = io::graph_from_json(in);
  const RatVector x = io::vector_from_json(need(o.x, "--x"));
  if (x.size() != g.arc_count()) throw ParseError("--x needs one entry per arc");
  RatVector c = x;
  if (!o.c.empty()) {
    c = io::vector_from_json(load(o.c));
  } else if (in.contains("c")) {
    c = io::vector_from_json(in.at("c"));
  }
  const DeltaSpec delta = o.delta.empty() ? DeltaSpec{} : delta_spec_from_json(load(o.delta));
  const bool ok = is_generalized_delta_bond(g, c, delta, x);
  return {ok ? kSuccess : kNegative, {{"bond", ok}}, {}};
}

Result dualize_cmd(const Options& o) {
  const PlanarEmbedding e = io::embedding_from_json(io::read_json_file(o.input));
  return {kSuccess, io::to_json(dualize_flow_space(e)), {}};
}

Result breakeven_gen_cmd(const Options& o) {
  const ArcParamDigraph g = io::graph_from_json(io::read_json_file(o.input));
  RatVector mu;
  if (!o.mu.empty()) {
    mu = io::vector_from_json(load(o.mu));
  } else {
    std::mt19937_64 rng(o.seed);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      Rat r(static_cast<long>(rng() % 5) + 1, static_cast<unsigned long>(rng() % 5) + 1);
      r.canonicalize();
      mu.push_back(r);
    }
  }
  const ArcParamDigraph out = breakeven_parameterization(g, mu);
  return {kSuccess, {{"graph", io::to_json(out)}, {"mu", io::to_json(mu)}, {"breakeven", is_breakeven(out).breakeven}}, {}};
}

Result verify_cmd(const Options& o) {
  VerifyOptions v;
  v.seed = o.seed;
  v.samples = o.samples;
  v.cap = o.cap.value_or(kDefaultCycleCap);
  if (!o.supports.empty()) v.claimed = load(o.supports);
  const json report = verify(io::graph_from_json(io::read_json_file(o.input)), v);
  return {report.at("pass").get<bool>() ? kSuccess : kNegative, report, {}};
}

void write(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw ParseError(o.output + ": cannot open for writing");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Potentials, bonds and flows on arc-parameterized digraphs", "dlat"};
  app.require_subcommand(1, 1);
  Options o;

  using Handler = std::function<Result(const Options&)>;
  std::map<std::string, Handler> handlers;

  auto add = [&](const std::string& name, const std::string& description, Handler h) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("input", o.input, "input JSON file")->required();
    sub->add_option("--seed", o.seed, "random seed (default 0)");
    sub->add_option("--cap", o.cap, "enumeration cap");
    sub->add_flag("--dot", o.dot, "emit DOT instead of JSON where supported");
    sub->add_option("--output", o.output, "write the result to this file");
    handlers[name] = std::move(h);
    return sub;
  };

  add("check-distributive", "recognize network form or refute distributivity of an H-polyhedron", check_distributive)
      ->add_option("--trials", o.trials, "sampling trials");
  add("nnd-basis", "NND basis of an affine subspace or a refuting pair", nnd_basis_cmd);
  add("netmatrix", "digraph whose potential kernel is spanned by an NND basis", netmatrix_cmd);
  {
    auto* s = add("member", "membership in a D-polyhedron or H-polyhedron", member_cmd);
    s->add_option("--p", o.p, "point");
    s->add_option("--c", o.c, "capacities");
  }
  for (const bool is_join : {true, false}) {
    auto* s = add(is_join ? "join" : "meet", is_join ? "componentwise max of two members" : "componentwise min of two members",
                  [is_join](const Options& opts) { return lattice_op_cmd(opts, is_join); });
    s->add_option("--x", o.x, "first member");
    s->add_option("--y", o.y, "second member");
    s->add_option("--c", o.c, "capacities");
  }
  add("reduce", "pin one vertex per kernel basis vector", reduce_cmd)->add_option("--pin", o.pins, "pinned vertices");
  add("bond", "bond of a potential", bond_cmd)->add_option("--p", o.p, "potential");
  {
    auto* s = add("potential", "pinned potential of a bond", potential_cmd);
    s->add_option("--x", o.x, "bond");
    s->add_option("--pin", o.pins, "pinned vertices");
  }
  {
    auto* s = add("delta-translate", "shift prescribed circular balances to zero", delta_translate_cmd);
    s->add_option("--delta", o.delta, "balances per non-tree arc");
    s->add_option("--tree", o.tree, "spanning tree arc indices");
  }
  {
    auto* s = add("lattice-enum", "integral Delta-bonds and their covers", lattice_enum_cmd);
    s->add_option("--delta", o.delta, "balances per non-tree arc");
    s->add_option("--tree", o.tree, "spanning tree arc indices");
    s->add_option("--pin", o.pin, "pinned vertex (default 1)");
  }
  add("cycles", "breakeven cycles and bicycles with their flows", cycles_cmd);
  add("balance", "bicircular balances of an arc vector", balance_cmd)->add_option("--x", o.x, "arc vector");
  {
    auto* s = add("is-bond", "capacity and balance test for a generalized Delta-bond", is_bond_cmd);
    s->add_option("--x", o.x, "arc vector");
    s->add_option("--c", o.c, "capacities");
    s->add_option("--delta", o.delta, "balances [{\"signs\", \"value\"}]");
  }
  add("dualize", "dual digraph, scaling and facial flows of a planar breakeven digraph", dualize_cmd);
  add("breakeven-gen", "breakeven parameterization from vertex multipliers", breakeven_gen_cmd)
      ->add_option("--mu", o.mu, "positive vertex multipliers (random from the seed if absent)");
  {
    auto* s = add("verify", "cross-check enumerations, balances and lattice operations", verify_cmd);
    s->add_option("--supports", o.supports, "claimed supports to check");
    s->add_option("--samples", o.samples, "random samples per check");
  }

  try {
    std::vector<std::string> reversed_args(args.rbegin(), args.rend());
    app.parse(reversed_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Result r = handlers.at(name)(o);
    if (r.text) {
      write(o, *r.text, out);
    } else {
      r.body["seed"] = o.seed;
      write(o, r.body.dump(2) + "\n", out);
    }
    return r.code;
  } catch (const ParseError& e) {
    err << "dlat " << name << ": " << e.what() << "\n";
    return kUsage;
  } catch (const EmbeddingError& e) {
    err << "dlat " << name << ": invalid embedding: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    err << "dlat " << name << ": malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    err << "dlat " << name << ": " << e.what() << "\n";
    return kCapacity;
  } catch (const Error& e) {
    err << "dlat " << name << ": " << e.what() << "\n";
    return kNegative;
  }
}

}  // namespace dlat::cli
