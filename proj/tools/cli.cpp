#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ultracl/blowup.hpp"
#include "ultracl/closure.hpp"
#include "ultracl/oracle.hpp"
#include "ultracl/syntax.hpp"

namespace ultracl::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::int64_t prime = 3;
  std::string vars = "x,y";
  unsigned depth = 3;
  unsigned resolution = 1;
  unsigned max_blowups = 30;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::string input;
  std::vector<std::string> exprs;
  std::string point;
  std::string claimed;
  std::size_t chart = 1;
  std::uint64_t samples = 1000;
};

struct Context {
  Options opt;
  PrimeConfig cfg;
  std::vector<std::string> vars;
};

class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  Json inputs = Json::object();
  Json result = Json::object();
  bool certified = true;
  Json trace = Json::array();
  int code = Ok;
};

std::string show(const SetExpr& e, const Context& c) { return to_string(e, c.vars); }
std::string show(const Poly& p, const Context& c) { return to_string(p, c.vars); }

Json point_json(const std::vector<std::int64_t>& x) { return Json(x); }

Json trace_json(const std::vector<RuleStep>& steps, const Context& c) {
  Json out = Json::array();
  for (const auto& s : steps) {
    Json ops = Json::array();
    for (const auto& p : s.operands) ops.push_back(show(p, c));
    out.push_back({{"rule", s.rule}, {"operands", ops}, {"note", s.note}});
  }
  return out;
}

// Expressions come from the positional arguments, or the first one from --input.
std::vector<std::string> expressions(const Context& c, std::size_t want) {
  std::vector<std::string> out = c.opt.exprs;
  if (!c.opt.input.empty()) {
    std::ifstream in(c.opt.input);
    if (!in) throw BadInput("cannot read input file '" + c.opt.input + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    out.insert(out.begin(), text);
  }
  if (out.size() != want) {
    throw BadInput("expected " + std::to_string(want) + " expression(s), got " + std::to_string(out.size()));
  }
  return out;
}

GridSpec grid(const Context& c) {
  GridSpec g;
  g.dims = c.vars.size();
  g.cfg = c.cfg;
  g.depth = c.opt.depth;
  g.resolution = c.opt.resolution;
  return g;
}

Outcome engine_command(const std::string& name, const Context& c) {
  const std::string text = expressions(c, 1).front();
  const SetExpr e = parse_set(text, c.vars);
  ClosureResult r = name == "closure"    ? closure(e, c.cfg)
                    : name == "interior" ? interior(e, c.cfg)
                                         : boundary(e, c.cfg);
  Outcome o;
  o.inputs["expression"] = show(e, c);
  o.result["set"] = show(r.result, c);
  o.certified = r.certified;
  o.trace = trace_json(r.trace, c);
  return o;
}

Point parse_point(const std::string& text, const Context& c) {
  std::vector<Rational> coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    Rational q;
    if (part.empty() || q.set_str(part, 10) != 0) throw BadInput("invalid coordinate '" + part + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw BadInput("invalid coordinate '" + part + "'");
    coords.push_back(q);
  }
  if (coords.size() != c.vars.size()) throw BadInput("point dimension does not match --vars");
  return Point(std::move(coords), c.cfg);
}

Outcome member_command(const Context& c) {
  const SetExpr e = parse_set(expressions(c, 1).front(), c.vars);
  if (c.opt.point.empty()) throw BadInput("--point is required");
  const Point x = parse_point(c.opt.point, c);
  ClosureMemberOptions mo;
  mo.sample_depth = c.opt.depth;
  mo.max_blowups = c.opt.max_blowups;
  const ClosureMembership m = closure_member(e, x, c.cfg, mo);
  Outcome o;
  o.inputs["expression"] = show(e, c);
  o.inputs["point"] = x.to_string();
  o.result["in_set"] = member(e, x, c.cfg);
  o.result["in_closure"] = m.value;
  o.result["approximate"] = m.approximate;
  o.certified = !m.approximate;
  return o;
}

Outcome verify_command(const Context& c) {
  const SetExpr e = parse_set(expressions(c, 1).front(), c.vars);
  Outcome o;
  SetExpr claimed = e;
  if (c.opt.claimed.empty()) {
    const ClosureResult r = closure(e, c.cfg);
    claimed = r.result;
    o.certified = r.certified;
    o.trace = trace_json(r.trace, c);
  } else {
    claimed = parse_set(c.opt.claimed, c.vars);
    o.certified = false;
  }
  const GridSpec g = grid(c);
  const VerifyReport rep = verify_closure(e, claimed, g);
  o.inputs["expression"] = show(e, c);
  o.inputs["claimed"] = show(claimed, c);
  o.inputs["depth"] = g.depth;
  o.inputs["resolution"] = g.resolution;
  o.result["points"] = rep.points;
  o.result["closure_classes"] = rep.closure_classes;
  o.result["claimed_classes"] = rep.claimed_classes;
  Json v = Json::array();
  for (const auto& viol : rep.violations) {
    Json item{{"direction", viol.direction}, {"class", point_json(viol.cls)}};
    item["witness"] = viol.witness ? point_json(*viol.witness) : Json(nullptr);
    v.push_back(item);
  }
  o.result["violation_count"] = rep.violations.size();
  o.result["violations"] = v;
  o.code = rep.ok() ? Ok : Violations;
  return o;
}

Outcome blowup_command(const Context& c) {
  const Poly f = parse_poly(expressions(c, 1).front(), c.vars);
  const std::size_t n = c.vars.size();
  if (c.opt.chart < 1 || c.opt.chart > n) throw BadInput("--chart must lie in 1.." + std::to_string(n));
  const Chart ch{c.opt.chart, n, 0, Point::origin(n)};
  Outcome o;
  o.inputs["polynomial"] = show(f, c);
  o.inputs["chart"] = c.opt.chart;
  Json map = Json::array();
  for (const auto& p : chart_map(ch)) map.push_back(show(p, c));
  o.result["chart_map"] = map;
  o.result["pullback"] = show(pullback_poly(f, ch), c);
  if (!f.is_zero()) {
    auto [m, st] = strict_transform(f, ch);
    o.result["exceptional_power"] = m;
    o.result["strict_transform"] = show(st, c);
  }
  return o;
}

Outcome monomialize_command(const Context& c) {
  const Poly f = parse_poly(expressions(c, 1).front(), c.vars);
  const Monomialization mz = monomialize2(f, c.cfg, c.opt.max_blowups);
  Outcome o;
  o.inputs["polynomial"] = show(f, c);
  o.result["blowups"] = mz.seq.blowup_count();
  Json leaves = Json::array();
  bool all_nc = true;
  for (const auto& r : mz.records) {
    const bool nc = has_normal_crossings(mz.seq.pullback(f, r.node), r.point);
    all_nc = all_nc && nc;
    leaves.push_back({{"node", r.node},
                      {"point", r.point.to_string()},
                      {"monomial", to_string(r.monomial, c.vars)},
                      {"unit", show(r.unit.numerator, c)},
                      {"normal_crossings", nc}});
  }
  o.result["all_normal_crossings"] = all_nc;
  o.result["leaves"] = leaves;
  for (std::size_t id = 0; id < mz.seq.size(); ++id) {
    const BlowupNode& nd = mz.seq.node(id);
    Json node{{"node", id}};
    node["parent"] = nd.parent ? Json(*nd.parent) : Json(nullptr);
    node["chart"] = nd.chart ? Json(nd.chart->index) : Json(nullptr);
    node["translation"] = nd.chart ? Json(nd.chart->translation.to_string()) : Json(nullptr);
    node["total_transform"] = show(mz.seq.pullback(f, id), c);
    Json centers = Json::array();
    for (const auto& ev : nd.blowups) centers.push_back({{"center", ev.center.to_string()}, {"children", ev.children}});
    node["blowups"] = centers;
    o.trace.push_back(node);
  }
  o.code = all_nc ? Ok : Unsupported;
  return o;
}

Outcome distance_command(const Context& c) {
  const auto texts = expressions(c, 2);
  const SetExpr a = parse_set(texts[0], c.vars);
  const SetExpr b = parse_set(texts[1], c.vars);
  const GridSpec g = grid(c);
  const auto d = min_distance(a, b, g);
  Outcome o;
  o.inputs["first"] = show(a, c);
  o.inputs["second"] = show(b, c);
  o.inputs["depth"] = g.depth;
  o.result["distance"] = d ? Json(d->to_string(c.cfg)) : Json(nullptr);
  o.certified = false;
  return o;
}

Outcome sample_command(const Context& c) {
  const SetExpr e = parse_set(expressions(c, 1).front(), c.vars);
  const GridSpec g = grid(c);
  const SampleReport r = sample(e, g, c.opt.samples, c.opt.seed);
  Outcome o;
  o.inputs["expression"] = show(e, c);
  o.inputs["depth"] = g.depth;
  o.inputs["samples"] = c.opt.samples;
  o.inputs["seed"] = c.opt.seed;
  o.result["samples"] = r.samples;
  o.result["members"] = r.members;
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back(point_json(x));
  o.result["witnesses"] = w;
  o.certified = false;
  return o;
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    if (j.empty()) out << prefix << ": {}\n";
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    if (j.empty()) out << prefix << ": []\n";
    const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (scalars && !j.empty()) {
      out << prefix << ": " << j.dump() << "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

void add_common(CLI::App* sub, Options& opt, bool two_exprs) {
  sub->add_option("--prime", opt.prime, "prime p")->capture_default_str();
  sub->add_option("--vars", opt.vars, "comma-separated variable names")->capture_default_str();
  sub->add_option("--depth", opt.depth, "grid depth M")->capture_default_str();
  sub->add_option("--resolution", opt.resolution, "class resolution N")->capture_default_str();
  sub->add_option("--max-blowups", opt.max_blowups, "blow-up budget")->capture_default_str();
  sub->add_option("--format", opt.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  sub->add_option("--seed", opt.seed, "seed for randomized sampling")->capture_default_str();
  sub->add_option("--input", opt.input, "file holding one expression");
  sub->add_option("expressions", opt.exprs, two_exprs ? "two set expressions" : "expression");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"ultracl: closures of norm-comparison sets over p-adic integers", "ultracl"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"closure", "closure of a set"},
      {"boundary", "boundary of a set"},
      {"interior", "interior of a set"},
      {"member", "closure membership of a point"},
      {"verify", "check a closure against the residue-grid oracle"},
      {"blowup", "pull a polynomial back through a blow-up chart"},
      {"monomialize", "resolve a plane curve to normal crossings"},
      {"distance", "minimum distance between two sets on the grid"},
      {"sample", "random membership sampling (exploration)"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common(sub, opt, name == "distance");
    if (name == "member") sub->add_option("--point", opt.point, "comma-separated coordinates");
    if (name == "verify") sub->add_option("--claimed", opt.claimed, "claimed closure (defaults to the engine's)");
    if (name == "blowup") sub->add_option("--chart", opt.chart, "chart index j")->capture_default_str();
    if (name == "sample") sub->add_option("--samples", opt.samples, "number of samples")->capture_default_str();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : InputError;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    Context c{opt, PrimeConfig(opt.prime), parse_var_list(opt.vars)};
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    if (name == "closure" || name == "boundary" || name == "interior") {
      o = engine_command(name, c);
    } else if (name == "member") {
      o = member_command(c);
    } else if (name == "verify") {
      o = verify_command(c);
    } else if (name == "blowup") {
      o = blowup_command(c);
    } else if (name == "monomialize") {
      o = monomialize_command(c);
    } else if (name == "distance") {
      o = distance_command(c);
    } else {
      o = sample_command(c);
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    o.inputs["prime"] = opt.prime;
    o.inputs["vars"] = c.vars;
    Json report{{"command", name}, {"inputs", o.inputs}, {"result", o.result}, {"certified", o.certified},
                {"trace", o.trace}, {"timing", {{"elapsed_ms", ms}}}};
    if (opt.format == "json") {
      out << report.dump(2) << "\n";
    } else {
      flatten(report, "", out);
    }
    return o.code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  } catch (const BadInput& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return Unsupported;
  } catch (const UnsupportedDimension& e) {
    err << "error: " << e.what() << "\n";
    return Unsupported;
  } catch (const MaxIterationsExceeded& e) {
    err << "error: " << e.what() << "\n";
    return Unsupported;
  } catch (const IrrationalSingularity& e) {
    err << "error: " << e.what() << "\n";
    return Unsupported;
  } catch (const IncomparableExponents& e) {
    err << "error: " << e.what() << "\n";
    return Unsupported;
  } catch (const NotNormalCrossings& e) {
    err << "error: " << e.what() << "\n";
    return Unsupported;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Unsupported;
  }
}

}  // namespace ultracl::cli
