#include "scenario.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "verify.hpp"

namespace bkalg::tools {

using io::Json;
using io::ParseError;

namespace {

constexpr double kGelfandMazurTolerance = 1e-10;

// ---- argument access -------------------------------------------------------

const Json& require_key(const Json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw ParseError(path, std::string("missing '") + key + "'");
  return obj[key];
}

std::string string_arg(const Json& obj, const char* key, const std::string& path) {
  const Json& v = require_key(obj, key, path);
  if (!v.is_string()) throw ParseError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::optional<double> real_arg(const Json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) return std::nullopt;
  const Json& v = obj[key];
  if (!v.is_number() || !(v.get<double>() > 0.0)) throw ParseError(path + "." + key, "expected a positive number");
  return v.get<double>();
}

std::optional<std::uint64_t> count_arg(const Json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) return std::nullopt;
  const Json& v = obj[key];
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(path + "." + key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::optional<bool> bool_arg(const Json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) return std::nullopt;
  if (!obj[key].is_boolean()) throw ParseError(path + "." + key, "expected true or false");
  return obj[key].get<bool>();
}

void allow_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [key, _] : obj.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
      throw ParseError(path + "." + key, "unknown field");
}

std::string one_of(const Json& obj, const char* key, std::initializer_list<const char*> choices, const char* fallback,
                   const std::string& path) {
  if (!obj.contains(key)) return fallback;
  const std::string v = string_arg(obj, key, path);
  if (std::none_of(choices.begin(), choices.end(), [&](const char* c) { return v == c; })) {
    std::string msg = "expected one of";
    for (const char* c : choices) msg += std::string(" '") + c + "'";
    throw ParseError(path + "." + key, msg);
  }
  return v;
}

// ---- scenario pieces -------------------------------------------------------

SpacePtr parse_space(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("space", "expected a non-empty array of atoms");
  std::vector<AtomicMeasureSpace::Atom> atoms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "space[" + std::to_string(i) + "]";
    if (!j[i].is_object()) throw ParseError(path, "expected {atom_id, weight}");
    allow_keys(j[i], {"atom_id", "weight"}, path);
    const Json& w = require_key(j[i], "weight", path);
    if (!w.is_number()) throw ParseError(path + ".weight", "expected a number");
    atoms.push_back({string_arg(j[i], "atom_id", path), w.get<double>()});
  }
  try {
    return AtomicMeasureSpace::create(std::move(atoms));
  } catch (const Error& e) {
    throw ParseError("space", e.what());
  }
}

BundlePtr parse_bundle(const Json& j, const SpacePtr& space) {
  std::vector<FiberDescriptor> fibers;
  if (j.is_object() && j.contains("kind")) {
    fibers.assign(space->size(), io::descriptor_from_json(j, "bundle"));
  } else if (j.is_array()) {
    if (j.size() != space->size())
      throw ParseError("bundle", "expected " + std::to_string(space->size()) + " descriptors, got " +
                                     std::to_string(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
      fibers.push_back(io::descriptor_from_json(j[i], "bundle[" + std::to_string(i) + "]"));
  } else if (j.is_object()) {
    for (std::size_t i = 0; i < space->size(); ++i) {
      const std::string& id = space->id(i);
      if (!j.contains(id)) throw ParseError("bundle", "missing descriptor for atom '" + id + "'");
      fibers.push_back(io::descriptor_from_json(j[id], "bundle." + id));
    }
    for (const auto& [key, _] : j.items())
      if (!space->index_of(key)) throw ParseError("bundle." + key, "unknown atom");
  } else {
    throw ParseError("bundle", "expected a descriptor, an array of descriptors or an object keyed by atom");
  }
  return Bundle::create(space, std::move(fibers));
}

std::vector<Section> parse_witness(const Json& j, const BundlePtr& bundle, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a non-empty array of sections");
  std::vector<Section> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_object()) throw ParseError(p, "expected {name, values}");
    const std::string name = j[i].contains("name") && j[i]["name"].is_string() ? j[i]["name"].get<std::string>() : p;
    out.push_back(io::section_from_json(require_key(j[i], "values", p), bundle, "section '" + name + "'"));
  }
  return out;
}

// Full argument validation, run at load time so every name and literal is
// checked before any command executes.
void check_command(const Command& c, const Scenario& s) {
  const Json& a = c.args;
  const std::string& p = c.path;
  real_arg(a, "tolerance", p);
  count_arg(a, "samples", p);
  count_arg(a, "cap", p);
  if (c.name == "norms") {
    allow_keys(a, {"command"}, p);
  } else if (c.name == "invert") {
    allow_keys(a, {"command", "section", "method", "expect", "tolerance"}, p);
    s.section(string_arg(a, "section", p), p + ".section");
    one_of(a, "method", {"auto", "neumann", "exact"}, "auto", p);
    one_of(a, "expect", {"invertible", "not-invertible"}, "invertible", p);
  } else if (c.name == "perturb") {
    allow_keys(a, {"command", "x", "h", "tolerance"}, p);
    s.section(string_arg(a, "x", p), p + ".x");
    s.section(string_arg(a, "h", p), p + ".h");
  } else if (c.name == "spectrum") {
    allow_keys(a, {"command", "section", "queries", "tolerance", "samples", "cap"}, p);
    s.section(string_arg(a, "section", p), p + ".section");
    if (a.contains("queries")) {
      const Json& q = a["queries"];
      if (!q.is_array()) throw ParseError(p + ".queries", "expected an array");
      for (std::size_t i = 0; i < q.size(); ++i) {
        const std::string qp = p + ".queries[" + std::to_string(i) + "]";
        if (!q[i].is_object()) throw ParseError(qp, "expected {a, expect}");
        allow_keys(q[i], {"a", "expect"}, qp);
        io::efunction_from_json(require_key(q[i], "a", qp), s.space, qp + ".a");
        bool_arg(q[i], "expect", qp);
      }
    }
  } else if (c.name == "reconstruct") {
    allow_keys(a, {"command", "sections", "samples", "tolerance"}, p);
    if (a.contains("sections")) {
      const Json& names = a["sections"];
      if (!names.is_array()) throw ParseError(p + ".sections", "expected an array of section names");
      for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string np = p + ".sections[" + std::to_string(i) + "]";
        if (!names[i].is_string()) throw ParseError(np, "expected a section name");
        s.section(names[i].get<std::string>(), np);
      }
    }
  } else if (c.name == "gelfand-mazur" || c.name == "reverse-bound") {
    allow_keys(a, {"command", "expect", "samples", "tolerance"}, p);
    one_of(a, "expect", {"Isomorphic", "Counterexample", "Inconclusive"}, "Isomorphic", p);
  } else if (c.name == "verify") {
    allow_keys(a, {"command", "samples", "tolerance", "cap"}, p);
  } else if (c.name == "replay") {
    allow_keys(a, {"command", "check", "witness", "expect", "tolerance"}, p);
    const std::string check = one_of(a, "check", {"unit-support", "zero-divisor"}, "", p);
    if (check.empty()) throw ParseError(p, "missing 'check'");
    const auto w = parse_witness(require_key(a, "witness", p), s.bundle, p + ".witness");
    if (w.size() != (check == "unit-support" ? 1u : 2u))
      throw ParseError(p + ".witness", "a " + check + " witness has " + (check == "unit-support" ? "1" : "2") +
                                           " section(s), got " + std::to_string(w.size()));
    one_of(a, "expect", {"Counterexample", "Rejected"}, "Counterexample", p);
  }
}

// ---- command bodies --------------------------------------------------------

struct Context {
  const Scenario& scenario;
  const Parameters& params;
  const Command& command;
  SplitMix64 rng;

  double tolerance() const { return command.args.value("tolerance", params.tolerance); }
  std::size_t samples() const { return command.args.value("samples", params.samples); }
  std::size_t cap() const { return command.args.value("cap", params.cap); }
  std::string arg(const char* key) const { return command.args[key].get<std::string>(); }
  const Section& section(const char* key) const { return scenario.section(arg(key), command.path); }
};

Json atom_list(const SpacePtr& space, const std::vector<std::size_t>& atoms) {
  Json arr = Json::array();
  for (std::size_t i : atoms) arr.push_back(space->id(i));
  return arr;
}

double min_value(const EFunction& a) {
  double m = std::numeric_limits<double>::infinity();
  for (Complex z : a.values()) m = std::min(m, z.real());
  return m;
}

Json certificate_json(const InverseCertificate& c, const std::string& name) {
  Json j;
  j["inverse"] = io::to_json(c.inverse, name);
  j["residual"] = io::real_to_json(c.residual);
  j["truncation_order"] = c.truncation_order ? Json(*c.truncation_order) : Json(nullptr);
  j["bound_slack"] = c.bound_slack ? io::real_to_json(*c.bound_slack) : Json(nullptr);
  return j;
}

bool certificate_ok(const InverseCertificate& c, double tol) {
  return c.residual.sup() <= tol && (!c.bound_slack || min_value(*c.bound_slack) >= kBoundSlackFloor);
}

bool run_norms(Context& ctx, Json& out) {
  const Scenario& s = ctx.scenario;
  Json norms = Json::array();
  for (const NamedSection& ns : s.sections) norms.push_back({{"name", ns.name}, {"norm", io::real_to_json(norm(ns.section))}});
  const EFunction unit = norm(Section::unit(s.bundle));
  out["norms"] = std::move(norms);
  out["unit_norm"] = io::real_to_json(unit);
  return max_distance(unit, EFunction::constant(s.space, 1.0)) <= 1e-12;
}

bool run_invert(Context& ctx, Json& out) {
  const std::string name = ctx.arg("section");
  const Section& x = ctx.section("section");
  const double tol = ctx.tolerance();
  const std::string expect = ctx.command.args.value("expect", std::string("invertible"));
  std::string method = ctx.command.args.value("method", std::string("auto"));
  const Section e = Section::unit(x.bundle());
  const Section gap = e - x;
  if (method == "auto") method = norm(gap).sup() <= 0.5 ? "neumann" : "exact";
  out["section"] = name;
  out["method"] = method;

  if (method == "neumann") {
    const InverseCertificate cert = neumann_inverse(gap, tol);
    out["invertible"] = true;
    out.update(certificate_json(cert, name + "^-1"));
    return certificate_ok(cert, tol) && expect == "invertible";
  }
  auto inv = inverse(x);
  if (auto* bad = std::get_if<NotInvertible>(&inv)) {
    out["invertible"] = false;
    out["atoms"] = atom_list(x.space(), bad->atoms);
    return expect == "not-invertible";
  }
  const Section& xi = std::get<Section>(inv);
  const InverseCertificate cert{xi, norm(x * xi - e), std::nullopt, std::nullopt};
  out["invertible"] = true;
  out.update(certificate_json(cert, name + "^-1"));
  return certificate_ok(cert, tol) && expect == "invertible";
}

bool run_perturb(Context& ctx, Json& out) {
  const Section& x = ctx.section("x");
  const Section& h = ctx.section("h");
  const double tol = ctx.tolerance();
  const InverseCertificate cert = perturbed_inverse(x, h, tol);
  out["x"] = ctx.arg("x");
  out["h"] = ctx.arg("h");
  out.update(certificate_json(cert, "(" + ctx.arg("x") + "+" + ctx.arg("h") + ")^-1"));
  bool ok = certificate_ok(cert, tol);
  auto direct = inverse(x + h);
  if (auto* xi = std::get_if<Section>(&direct)) {
    const double gap = max_distance(cert.inverse, *xi);
    out["exact_gap"] = gap;
    ok = ok && gap <= 100.0 * tol;
  }
  return ok;
}

Json violation_json(const PropertyViolation& v) {
  Json j{{"property", v.property}, {"detail", v.detail}};
  j["witness"] = v.witness ? io::to_json(*v.witness) : Json(nullptr);
  return j;
}

bool run_spectrum(Context& ctx, Json& out) {
  const Section& x = ctx.section("section");
  const double tol = ctx.tolerance();
  const FiberSpectrumTable table = spectrum_table(x, tol);
  Json tab = Json::object();
  for (std::size_t i = 0; i < x.size(); ++i) {
    Json vals = Json::array();
    for (Complex z : table.distinct(i, tol)) vals.push_back(io::to_json(z));
    tab[x.space()->id(i)] = std::move(vals);
  }
  const SpectrumEnumeration en = spm_enumerate(table, ctx.cap(), tol);
  Json members = Json::array();
  for (const EFunction& a : en.members) members.push_back(io::to_json(a));

  const SpectrumPropertyReport r = spm_properties(x, ctx.samples(), tol, ctx.rng, ctx.cap());
  Json props{{"nonempty", r.nonempty}, {"cyclic", r.cyclic},           {"closed", r.closed},
             {"bounded", r.bounded},   {"members", r.members},         {"truncated", r.truncated},
             {"cyclic_trials", r.cyclic_trials}, {"closed_trials", r.closed_trials}};
  Json violations = Json::array();
  for (const PropertyViolation& v : r.violations) violations.push_back(violation_json(v));
  props["violations"] = std::move(violations);
  props["passed"] = r.passed();

  out["section"] = ctx.arg("section");
  out["table"] = std::move(tab);
  out["members"] = std::move(members);
  out["total"] = en.total;
  out["truncated"] = en.truncated;
  out["properties"] = std::move(props);

  bool ok = r.passed();
  if (ctx.command.args.contains("queries")) {
    Json answers = Json::array();
    const Json& qs = ctx.command.args["queries"];
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const EFunction a = io::efunction_from_json(qs[i]["a"], x.space(), "");
      const bool in_spm = spm_contains(table, a, tol);
      const bool by_def = spm_contains_by_invertibility(x, a, tol);
      Json ans{{"a", io::to_json(a)}, {"spm", in_spm}, {"sp", sp_contains(table, a, tol)}, {"spm_by_invertibility", by_def}};
      bool q_ok = in_spm == by_def;
      if (qs[i].contains("expect")) q_ok = q_ok && qs[i]["expect"].get<bool>() == in_spm;
      ans["passed"] = q_ok;
      ok = ok && q_ok;
      answers.push_back(std::move(ans));
    }
    out["queries"] = std::move(answers);
  }
  return ok;
}

bool run_reconstruct(Context& ctx, Json& out) {
  const Scenario& s = ctx.scenario;
  std::vector<Section> gens;
  Json names = Json::array();
  if (ctx.command.args.contains("sections")) {
    for (const Json& n : ctx.command.args["sections"]) {
      gens.push_back(s.section(n.get<std::string>(), ctx.command.path));
      names.push_back(n);
    }
  } else {
    for (const NamedSection& ns : s.sections) {
      gens.push_back(ns.section);
      names.push_back(ns.name);
    }
  }
  const double tol = ctx.command.args.value("tolerance", 1e-10);
  const Reconstruction r = reconstruct_bundle(gens, ctx.rng, ctx.samples(), tol);
  Json fibers = Json::object();
  Json ranks = Json::object();
  for (std::size_t i = 0; i < s.space->size(); ++i) {
    fibers[s.space->id(i)] = io::to_json(r.bundle->fiber(i));
    ranks[s.space->id(i)] = r.report.image_rank.at(i);
  }
  Json checks = Json::array();
  for (const CheckEntry& c : r.report.checks)
    checks.push_back({{"check", c.check}, {"passed", c.passed}, {"trials", c.trials}, {"witness", c.witness}});
  out["sections"] = std::move(names);
  out["fibers"] = std::move(fibers);
  out["image_rank"] = std::move(ranks);
  out["checks"] = std::move(checks);
  return r.report.passed();
}

Json verdict_json(const GMVerdict& v, bool reverse) {
  Json j;
  j["outcome"] = to_string(v.outcome);
  Json witness = Json::array();
  const char* names[] = {"x", "y"};
  for (std::size_t i = 0; i < v.witness.size(); ++i)
    witness.push_back(io::to_json(v.witness[i], reverse ? names[std::min<std::size_t>(i, 1)] : "u"));
  j["witness"] = std::move(witness);
  j["witness_support"] = v.witness_support ? io::atoms_to_json(*v.witness_support) : Json(nullptr);
  j["checks_run"] = v.checks_run;
  j["tolerance"] = v.tolerance;
  j["isometry_defect"] = v.isometry_defect;
  j["multiplicativity_defect"] = v.multiplicativity_defect;
  j["bound"] = v.bound ? io::real_to_json(*v.bound) : Json(nullptr);
  Json parts = Json::array();
  for (const GMPart& p : v.parts)
    parts.push_back({{"atoms", io::atoms_to_json(p.part)},
                     {"level", p.level ? Json(*p.level) : Json(nullptr)},
                     {"outcome", to_string(p.outcome)}});
  j["parts"] = std::move(parts);
  j["note"] = v.note;
  return j;
}

bool run_gelfand_mazur(Context& ctx, Json& out, bool reverse) {
  const double tol = ctx.command.args.value("tolerance", kGelfandMazurTolerance);
  const GMVerdict v = reverse ? gm_reverse_bound_check(ctx.scenario.bundle, ctx.samples(), tol, ctx.rng)
                              : gm_unit_support_check(ctx.scenario.bundle, ctx.samples(), tol, ctx.rng);
  out = verdict_json(v, reverse);
  bool ok = true;
  if (v.outcome == GMOutcome::counterexample) {
    const bool replays = reverse ? verify_zero_divisor_witness(v.witness.at(0), v.witness.at(1), tol)
                                 : verify_unit_support_witness(v.witness.at(0), tol);
    out["witness_replays"] = replays;
    ok = replays;
  }
  if (ctx.command.args.contains("expect")) ok = ok && ctx.arg("expect") == to_string(v.outcome);
  return ok;
}

bool run_replay(Context& ctx, Json& out) {
  const std::string check = ctx.arg("check");
  const double tol = ctx.command.args.value("tolerance", kGelfandMazurTolerance);
  const auto w = parse_witness(ctx.command.args["witness"], ctx.scenario.bundle, ctx.command.path + ".witness");
  const bool verified = check == "unit-support" ? verify_unit_support_witness(w[0], tol)
                                                : verify_zero_divisor_witness(w[0], w[1], tol);
  const std::string outcome = verified ? "Counterexample" : "Rejected";
  out["check"] = check;
  out["outcome"] = outcome;
  return outcome == ctx.command.args.value("expect", std::string("Counterexample"));
}

bool run_verify(Context& ctx, Json& out) {
  VerifyOptions opts;
  opts.samples = ctx.samples();
  opts.tolerance = ctx.tolerance();
  opts.cap = ctx.cap();
  opts.seed = ctx.rng();
  Json props = Json::array();
  bool ok = true;
  for (const PropertyResult& r : verify_bundle(ctx.scenario.bundle, opts)) {
    props.push_back({{"property", r.name},
                     {"passed", r.passed},
                     {"trials", r.trials},
                     {"max_defect", r.max_defect},
                     {"threshold", r.threshold},
                     {"detail", r.detail}});
    ok = ok && r.passed;
  }
  out["properties"] = std::move(props);
  return ok;
}

Json error_json(const std::exception& e, const AtomicMeasureSpace& space) {
  Json err;
  std::optional<std::size_t> atom;
  if (const auto* p = dynamic_cast<const PreconditionError*>(&e)) {
    err["type"] = "precondition";
    atom = p->atom();
  } else if (dynamic_cast<const MismatchError*>(&e)) {
    err["type"] = "mismatch";
  } else if (dynamic_cast<const ShapeError*>(&e)) {
    err["type"] = "shape";
  } else if (dynamic_cast<const ConvergenceError*>(&e)) {
    err["type"] = "convergence";
  } else if (dynamic_cast<const InvariantViolation*>(&e)) {
    err["type"] = "invariant";
  } else {
    err["type"] = "internal";
  }
  err["message"] = e.what();
  if (atom && *atom < space.size()) err["atom"] = space.id(*atom);
  return err;
}

}  // namespace

const Section& Scenario::section(const std::string& name, const std::string& path) const {
  for (const NamedSection& ns : sections)
    if (ns.name == name) return ns.section;
  throw ParseError(path, "unknown section '" + name + "'");
}

Scenario parse_scenario(const Json& doc) {
  if (!doc.is_object()) throw ParseError("$", "scenario must be a JSON object");
  allow_keys(doc, {"space", "bundle", "sections", "parameters", "commands"}, "$");
  Scenario s;
  s.space = parse_space(require_key(doc, "space", "$"));
  s.bundle = parse_bundle(require_key(doc, "bundle", "$"), s.space);

  if (doc.contains("sections")) {
    const Json& secs = doc["sections"];
    if (!secs.is_array()) throw ParseError("sections", "expected an array of {name, values}");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < secs.size(); ++i) {
      const std::string path = "sections[" + std::to_string(i) + "]";
      if (!secs[i].is_object()) throw ParseError(path, "expected {name, values}");
      allow_keys(secs[i], {"name", "values"}, path);
      const std::string name = string_arg(secs[i], "name", path);
      if (!seen.insert(name).second) throw ParseError(path + ".name", "duplicate section name '" + name + "'");
      s.sections.push_back(
          {name, io::section_from_json(require_key(secs[i], "values", path), s.bundle, "section '" + name + "'")});
    }
  }

  if (doc.contains("parameters")) {
    const Json& p = doc["parameters"];
    if (!p.is_object()) throw ParseError("parameters", "expected an object");
    allow_keys(p, {"tolerance", "samples", "seed", "cap"}, "parameters");
    if (auto v = real_arg(p, "tolerance", "parameters")) s.parameters.tolerance = *v;
    if (auto v = count_arg(p, "samples", "parameters")) s.parameters.samples = *v;
    if (auto v = count_arg(p, "seed", "parameters")) s.parameters.seed = *v;
    if (auto v = count_arg(p, "cap", "parameters")) s.parameters.cap = *v;
  }

  const Json& cmds = require_key(doc, "commands", "$");
  if (!cmds.is_array()) throw ParseError("commands", "expected an array");
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const std::string path = "commands[" + std::to_string(i) + "]";
    Command c;
    c.path = path;
    if (cmds[i].is_string()) {
      c.args = Json{{"command", cmds[i]}};
    } else if (cmds[i].is_object()) {
      c.args = cmds[i];
    } else {
      throw ParseError(path, "expected a command name or {command, ...}");
    }
    c.name = string_arg(c.args, "command", path);
    if (std::none_of(std::begin(kCommandNames), std::end(kCommandNames), [&](const char* n) { return c.name == n; }))
      throw ParseError(path + ".command", "unknown command '" + c.name + "'");
    check_command(c, s);
    s.commands.push_back(std::move(c));
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open scenario file");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path.string(), e.what());
  }
  return parse_scenario(doc);
}

Parameters resolve(const Parameters& from_file, const ParameterOverrides& flags) {
  Parameters p = from_file;
  if (flags.tolerance) p.tolerance = *flags.tolerance;
  if (flags.samples) p.samples = *flags.samples;
  if (flags.seed) p.seed = *flags.seed;
  if (flags.cap) p.cap = *flags.cap;
  return p;
}

bool Report::passed() const noexcept {
  return std::all_of(commands.begin(), commands.end(), [](const CommandResult& c) { return c.passed; });
}

Report run(const Scenario& scenario, const Parameters& parameters) {
  Report report;
  report.parameters = parameters;
  SplitMix64 root(parameters.seed);
  for (const Command& c : scenario.commands) {
    Context ctx{scenario, parameters, c, root.split()};
    CommandResult r;
    r.command = c.name;
    r.result = Json::object();
    const auto start = std::chrono::steady_clock::now();
    try {
      if (c.name == "norms") r.passed = run_norms(ctx, r.result);
      else if (c.name == "invert") r.passed = run_invert(ctx, r.result);
      else if (c.name == "perturb") r.passed = run_perturb(ctx, r.result);
      else if (c.name == "spectrum") r.passed = run_spectrum(ctx, r.result);
      else if (c.name == "reconstruct") r.passed = run_reconstruct(ctx, r.result);
      else if (c.name == "gelfand-mazur") r.passed = run_gelfand_mazur(ctx, r.result, false);
      else if (c.name == "reverse-bound") r.passed = run_gelfand_mazur(ctx, r.result, true);
      else if (c.name == "verify") r.passed = run_verify(ctx, r.result);
      else if (c.name == "replay") r.passed = run_replay(ctx, r.result);
    } catch (const Error& e) {
      r.passed = false;
      r.result = Json{{"error", error_json(e, *scenario.space)}};
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.commands.push_back(std::move(r));
  }
  return report;
}

Json to_json(const Report& report, bool include_timing) {
  Json j;
  j["schema"] = 1;
  j["tool"] = "bkalg";
  j["version"] = kVersion;
  j["seed"] = report.parameters.seed;
  j["parameters"] = {{"tolerance", report.parameters.tolerance},
                     {"samples", report.parameters.samples},
                     {"seed", report.parameters.seed},
                     {"cap", report.parameters.cap}};
  Json cmds = Json::array();
  for (std::size_t i = 0; i < report.commands.size(); ++i) {
    const CommandResult& c = report.commands[i];
    Json entry{{"index", i}, {"command", c.command}, {"passed", c.passed}, {"result", c.result}};
    if (include_timing) entry["wall_ms"] = c.wall_ms;
    cmds.push_back(std::move(entry));
  }
  j["commands"] = std::move(cmds);
  j["passed"] = report.passed();
  return j;
}

std::string to_text(const Report& report) {
  std::ostringstream out;
  out << "bkalg " << kVersion << "  seed " << report.parameters.seed << "  tolerance " << report.parameters.tolerance
      << "  samples " << report.parameters.samples << "  cap " << report.parameters.cap << "\n";
  for (std::size_t i = 0; i < report.commands.size(); ++i) {
    const CommandResult& c = report.commands[i];
    out << (c.passed ? "[PASS] " : "[FAIL] ") << "#" << i << " " << c.command;
    const Json& r = c.result;
    if (r.contains("error")) {
      out << "  error(" << r["error"]["type"].get<std::string>() << "): " << r["error"]["message"].get<std::string>();
    } else if (r.contains("outcome")) {
      out << "  outcome " << r["outcome"].get<std::string>();
    } else if (r.contains("invertible")) {
      out << "  " << (r["invertible"].get<bool>() ? "invertible" : "not invertible");
      if (r.contains("truncation_order") && !r["truncation_order"].is_null())
        out << ", N = " << r["truncation_order"].dump();
    } else if (r.contains("properties") && r["properties"].is_array()) {
      std::size_t failed = 0;
      for (const Json& p : r["properties"]) failed += p["passed"].get<bool>() ? 0 : 1;
      out << "  " << r["properties"].size() - failed << "/" << r["properties"].size() << " properties hold";
      for (const Json& p : r["properties"])
        if (!p["passed"].get<bool>()) out << "\n         violated: " << p["property"].get<std::string>();
    } else if (r.contains("total")) {
      out << "  " << r["total"].dump() << " spm member(s)";
    }
    out << "  (" << static_cast<long long>(c.wall_ms + 0.5) << " ms)\n";
  }
  out << (report.passed() ? "all analyses passed\n" : "some assertions failed\n");
  return out.str();
}

}  // namespace bkalg::tools
