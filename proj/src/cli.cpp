#include "lgo/cli.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <sstream>

#include "lgo/error.hpp"
#include "lgo/jacobian.hpp"
#include "lgo/quasihom.hpp"
#include "lgo/statespace.hpp"

namespace lgo {

using nlohmann::ordered_json;

const char* command_name(Command c) {
  switch (c) {
    case Command::kAnalyze: return "analyze";
    case Command::kSymmetries: return "symmetries";
    case Command::kJacobian: return "jacobian";
    case Command::kDiamond: return "diamond";
  }
  return "unknown";
}

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::kPreconditionFailed || code == ErrorCode::kNotInSL ? 2 : 1;
}

namespace {

// ------------------------------------------------------------------ job parsing

struct Located {
  std::string text;
  int line = 1;
  int column = 1;
};

[[noreturn]] void fail_at(ErrorCode code, int line, int column, const std::string& msg) {
  throw Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

std::string message_of(const Error& e) {
  const std::string what = e.what();
  const std::string prefix = std::string(error_code_name(e.code())) + ": ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

// Trims whitespace, advancing the column of the located text accordingly.
Located trim(const Located& in) {
  Located out = in;
  std::size_t b = 0;
  while (b < in.text.size() && std::isspace(static_cast<unsigned char>(in.text[b]))) ++b;
  std::size_t e = in.text.size();
  while (e > b && std::isspace(static_cast<unsigned char>(in.text[e - 1]))) --e;
  out.text = in.text.substr(b, e - b);
  out.column = in.column + static_cast<int>(b);
  return out;
}

// Statements separated by ';' or newlines outside brackets; '#' comments run to end of line.
std::vector<Located> split_statements(std::string_view text) {
  std::vector<Located> out;
  Located cur;
  int line = 1, column = 1, depth = 0;
  bool comment = false;
  auto flush = [&] {
    Located t = trim(cur);
    if (!t.text.empty()) out.push_back(t);
    cur = Located{};
  };
  for (char ch : text) {
    if (ch == '\n') {
      comment = false;
      if (depth == 0) flush();
      else cur.text.push_back(' ');
      ++line;
      column = 1;
      continue;
    }
    if (!comment && ch == '#') comment = true;
    if (comment) {
      ++column;
      continue;
    }
    if (ch == ';' && depth == 0) {
      flush();
      ++column;
      continue;
    }
    if (cur.text.empty()) {
      cur.line = line;
      cur.column = column;
    }
    if (ch == '[' || ch == '(') ++depth;
    if ((ch == ']' || ch == ')') && depth > 0) --depth;
    cur.text.push_back(ch);
    ++column;
  }
  if (depth != 0) fail_at(ErrorCode::kSyntaxError, line, column, "unbalanced brackets at end of input");
  flush();
  return out;
}

// Splits on a separator at bracket depth zero.
std::vector<Located> split_top(const Located& in, char sep) {
  std::vector<Located> parts;
  int depth = 0;
  Located cur{"", in.line, in.column};
  for (std::size_t i = 0; i < in.text.size(); ++i) {
    const char ch = in.text[i];
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(trim(cur));
      cur = Located{"", in.line, in.column + static_cast<int>(i) + 1};
      continue;
    }
    cur.text.push_back(ch);
  }
  parts.push_back(trim(cur));
  return parts;
}

Located list_body(const Located& v, const std::string& what) {
  if (v.text.size() < 2 || v.text.front() != '[' || v.text.back() != ']') {
    fail_at(ErrorCode::kSyntaxError, v.line, v.column, what + " must be a bracketed list");
  }
  return trim(Located{v.text.substr(1, v.text.size() - 2), v.line, v.column + 1});
}

GeneratorFactor parse_factor(const Located& f, int nvars) {
  GeneratorFactor out;
  const std::string& t = f.text;
  if (t == "jf") return out;
  if (t.rfind("diag(", 0) == 0 && t.back() == ')') {
    out.kind = GeneratorFactor::Kind::kDiag;
    const Located inner{t.substr(5, t.size() - 6), f.line, f.column + 5};
    for (const auto& part : split_top(inner, ',')) {
      try {
        out.phases.push_back(frac(parse_rational(part.text)));
      } catch (const Error& e) {
        fail_at(ErrorCode::kSyntaxError, part.line, part.column, message_of(e));
      }
    }
    if (static_cast<int>(out.phases.size()) != nvars) {
      fail_at(ErrorCode::kArityMismatch, f.line, f.column,
              "diag has " + std::to_string(out.phases.size()) + " entries for " + std::to_string(nvars) +
                  " variables");
    }
    return out;
  }
  if (t.rfind("perm", 0) == 0) {
    out.kind = GeneratorFactor::Kind::kPerm;
    std::size_t i = 4;
    while (i < t.size()) {
      if (t[i] != '(') fail_at(ErrorCode::kSyntaxError, f.line, f.column + static_cast<int>(i), "expected '('");
      const std::size_t close = t.find(')', i);
      if (close == std::string::npos) {
        fail_at(ErrorCode::kSyntaxError, f.line, f.column + static_cast<int>(i), "unclosed cycle");
      }
      std::istringstream in(t.substr(i + 1, close - i - 1));
      std::vector<int> cycle;
      std::string tok;
      while (in >> tok) {
        if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          fail_at(ErrorCode::kSyntaxError, f.line, f.column + static_cast<int>(i), "bad cycle entry '" + tok + "'");
        }
        const int v = std::stoi(tok);
        if (v < 1 || v > nvars) {
          fail_at(ErrorCode::kArityMismatch, f.line, f.column + static_cast<int>(i),
                  "cycle entry " + tok + " outside 1.." + std::to_string(nvars));
        }
        cycle.push_back(v - 1);
      }
      if (cycle.empty()) fail_at(ErrorCode::kSyntaxError, f.line, f.column + static_cast<int>(i), "empty cycle");
      out.cycles.push_back(std::move(cycle));
      i = close + 1;
    }
    if (out.cycles.empty()) fail_at(ErrorCode::kSyntaxError, f.line, f.column, "perm needs at least one cycle");
    try {
      (void)GroupElement::permutation(nvars, out.cycles);
    } catch (const Error& e) {
      fail_at(e.code(), f.line, f.column, message_of(e));
    }
    return out;
  }
  fail_at(ErrorCode::kSyntaxError, f.line, f.column, "unknown generator '" + t + "'");
}

GeneratorSpec parse_generator(const Located& g, int nvars) {
  GeneratorSpec spec;
  spec.text = g.text;
  spec.line = g.line;
  spec.column = g.column;
  if (g.text.empty()) fail_at(ErrorCode::kSyntaxError, g.line, g.column, "empty generator");
  if (g.text == "Gd") {
    spec.kind = GeneratorSpec::Kind::kMaximalDiagonal;
    return spec;
  }
  if (g.text == "SLd") {
    spec.kind = GeneratorSpec::Kind::kDiagonalSl;
    return spec;
  }
  for (const auto& f : split_top(g, '*')) {
    if (f.text.empty()) fail_at(ErrorCode::kSyntaxError, f.line, f.column, "empty factor");
    spec.factors.push_back(parse_factor(f, nvars));
  }
  return spec;
}

// ------------------------------------------------------------------ JSON helpers

std::string rat(const Rational& q) { return to_string(q); }

ordered_json rationals(const std::vector<Rational>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& q : v) out.push_back(rat(q));
  return out;
}

ordered_json one_based(const std::vector<int>& v) {
  ordered_json out = ordered_json::array();
  for (int x : v) out.push_back(x + 1);
  return out;
}

ordered_json weights_json(const WeightSystem& w) {
  return ordered_json{{"d0", w.d0}, {"d", w.d}, {"q", rationals(w.q)}};
}

ordered_json diagonal_group_json(const DiagonalGroup& g) {
  ordered_json gens = ordered_json::array();
  for (const auto& v : g.generators) gens.push_back(GroupElement::diagonal(v).to_string());
  return ordered_json{{"order", g.order}, {"invariant_factors", g.invariant_factors}, {"generators", gens}};
}

ordered_json analyze_json(const Polynomial& f, const QuasihomAnalysis& a, const std::vector<std::string>& vars) {
  ordered_json out;
  ordered_json components = ordered_json::array();
  for (const auto& c : a.graph.components) {
    components.push_back({{"vertices", one_based(c.vertices)}, {"cycle", one_based(c.cycle)}});
  }
  out["graph"] = {{"kappa", one_based(a.graph.kappa)}, {"components", components}};
  ordered_json trees = ordered_json::array();
  for (const auto& t : a.decomposition.trees) trees.push_back(t.to_string(vars));
  out["decomposition"] = {{"f0", a.decomposition.f0.to_string(vars)},
                          {"trees", trees},
                          {"f_add", a.decomposition.f_add.to_string(vars)},
                          {"star_shaped", a.decomposition.is_star_shaped}};
  out["exponent_matrix"] = {{"entries", a.exponents.entries}, {"det", a.exponents.det}};
  out["calabi_yau"] = a.calabi_yau;
  const Classification cls = classify_invertible(f, a.graph, a.decomposition);
  ordered_json atoms = ordered_json::array();
  for (const auto& atom : cls.atoms) {
    atoms.push_back(
        {{"type", atom_type_name(atom.type)}, {"variables", one_based(atom.variables)}, {"exponents", atom.exponents}});
  }
  out["classification"] = {{"invertible", cls.invertible}, {"atoms", atoms}, {"reason", cls.reason}};
  try {
    const TransposeResult t = transpose_polynomial(f, a.exponents);
    out["transpose"] = {{"polynomial", t.polynomial.to_string(vars)},
                        {"weights", rationals(t.weights)},
                        {"all_positive", t.all_positive}};
  } catch (const Error& e) {
    out["transpose"] = {{"error", error_code_name(e.code())}, {"message", message_of(e)}};
  }
  return out;
}

GroupOptions group_options(const Job& job, bool require_sl) {
  GroupOptions o;
  o.cap = job.options.closure_cap;
  o.require_sl = require_sl;
  return o;
}

ordered_json symmetries_json(const Job& job, const QuasihomAnalysis& a, Report& report) {
  ordered_json out;
  out["maximal_diagonal"] = diagonal_group_json(diagonal_symmetries(job.f));
  out["diagonal_sl"] = diagonal_group_json(diagonal_sl_symmetries(job.f));
  out["graph_group"] = diagonal_group_json(graph_group(a.exponents));
  const GroupElement jf = make_jf(a.weights);
  out["jf"] = {{"element", jf.to_string()}, {"order", jf.order()}, {"in_sl", is_sl(jf)}};
  if (job.group_given) {
    const auto gens = resolve_generators(job, a.weights);
    const FiniteGroup g = generate_group(gens, job.f, a.weights, group_options(job, false));
    ordered_json glist = ordered_json::array();
    for (const auto& e : g.generators()) glist.push_back({{"element", e.to_string()}, {"in_sl", is_sl(e)}});
    const bool all_sl =
        std::all_of(g.elements().begin(), g.elements().end(), [](const GroupElement& e) { return is_sl(e); });
    out["group"] = {{"order", g.order()},
                    {"conjugacy_class_count", g.conjugacy_classes().size()},
                    {"generators", glist},
                    {"contains_jf", g.contains(jf)},
                    {"in_sl", all_sl}};
  }
  (void)report;
  return out;
}

ordered_json graded_json(const GradedDimensions& g) {
  ordered_json out = ordered_json::array();
  for (const auto& [d, n] : g) out.push_back({{"degree", rat(d)}, {"dimension", n}});
  return out;
}

ordered_json jacobian_json(const Job& job, const QuasihomAnalysis& a, Report& report) {
  const JacobianRing ring = quotient_ring(job.f, a.weights);
  const GradedDimensions dims = ring.graded_dimensions();
  const bool agrees = dims == poincare_oracle(a.weights);
  if (!agrees) report.exit_code = 2;
  return ordered_json{{"mu", ring.mu()},
                      {"c_hat", rat(ring.c_hat)},
                      {"graded_dimensions", graded_json(dims)},
                      {"oracle_agrees", agrees}};
}

void diamond_json(const Job& job, const QuasihomAnalysis& a, Report& report) {
  ordered_json& d = report.data;
  const auto gens = resolve_generators(job, a.weights);
  auto group = std::make_shared<const FiniteGroup>(
      generate_group(gens, job.f, a.weights, group_options(job, job.options.verify)));
  d["group"] = {{"order", group->order()}, {"conjugacy_class_count", group->conjugacy_classes().size()}};
  if (job.options.verify) check_theorem_preconditions(a.weights, *group);

  const StateSpace space = build_state_space(job.f, a.weights, group);
  ordered_json sectors = ordered_json::array();
  for (const auto& s : space.sectors()) {
    sectors.push_back({{"g", (*group)[s.element].to_string()},
                       {"Ng", s.fixed.n_fixed()},
                       {"age", rat(s.age)},
                       {"mu", s.dimension()}});
  }
  d["sectors"] = sectors;
  d["btot_dimension"] = space.total_dimension();

  bool oracle_agrees = true;
  ordered_json blocks = ordered_json::array();
  for (const auto& b : space.blocks()) {
    if (b.dimension() != b.oracle_dimension) oracle_agrees = false;
    if (b.dimension() == 0 && b.oracle_dimension == 0) continue;
    blocks.push_back({{"charges", {rat(b.charges.left), rat(b.charges.right)}},
                      {"size", b.entries.size()},
                      {"invariants", b.dimension()},
                      {"oracle", b.oracle_dimension}});
  }
  d["invariant_blocks"] = blocks;
  d["oracle_agrees"] = oracle_agrees;
  if (!oracle_agrees) report.exit_code = 2;

  const Diamond diamond = assemble_diamond(space);
  ordered_json outside = ordered_json::array();
  for (const auto& [c, n] : diamond.outside) outside.push_back({{"charges", {rat(c.left), rat(c.right)}}, {"dimension", n}});
  d["diamond"] = {{"D", diamond.D}, {"h", diamond.h}, {"total", diamond.total}, {"outside", outside}};

  if (!job.options.verify) {
    d["verification"] = {{"skipped", true}};
    return;
  }
  const VerificationReport v = verify_theorem(space, diamond);
  ordered_json checks = ordered_json::array();
  for (const auto& c : v.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  d["verification"] = {{"checks", checks}, {"all_pass", v.all_pass()}};
  if (!v.all_pass()) report.exit_code = 2;
}

// ------------------------------------------------------------------ text rendering

std::string join(const ordered_json& arr, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += sep;
    out += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
  }
  return out;
}

std::string yes_no(const ordered_json& b) { return b.get<bool>() ? "yes" : "no"; }

void render_diamond(std::ostringstream& out, const ordered_json& dj) {
  const int D = dj["D"].get<int>();
  const auto& h = dj["h"];
  out << "diamond (D = " << D << "):\n";
  if (D < 0) return;
  std::size_t width = 1;
  for (const auto& row : h)
    for (const auto& x : row) width = std::max(width, x.dump().size());
  const std::size_t cell = width + 3 + (width + 3) % 2;
  for (int r = 0; r <= 2 * D; ++r) {
    const int hi = std::min(r, D), lo = std::max(0, r - D);
    const int count = hi - lo + 1;
    std::string line(2 + static_cast<std::size_t>(D + 1 - count) * cell / 2, ' ');
    for (int a = hi; a >= lo; --a) {
      std::string v = h[a][r - a].dump();
      const std::size_t pad = cell - v.size();
      line += std::string(pad / 2, ' ') + v + std::string(pad - pad / 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
}

}  // namespace

Job parse_job(std::string_view text) {
  Job job;
  std::optional<Located> f_text, vars_text, group_text;
  for (const auto& st : split_statements(text)) {
    const auto eq = st.text.find('=');
    if (eq == std::string::npos) fail_at(ErrorCode::kSyntaxError, st.line, st.column, "expected 'key = value'");
    const Located key = trim(Located{st.text.substr(0, eq), st.line, st.column});
    const Located value = trim(Located{st.text.substr(eq + 1), st.line, st.column + static_cast<int>(eq) + 1});
    if (value.text.empty()) fail_at(ErrorCode::kSyntaxError, value.line, value.column, "missing value");
    auto once = [&](std::optional<Located>& slot) {
      if (slot) fail_at(ErrorCode::kSyntaxError, key.line, key.column, "duplicate key '" + key.text + "'");
      slot = value;
    };
    if (key.text == "f") {
      once(f_text);
    } else if (key.text == "vars") {
      once(vars_text);
    } else if (key.text == "group") {
      once(group_text);
    } else if (key.text == "command") {
      static const std::vector<std::pair<std::string, Command>> names = {{"analyze", Command::kAnalyze},
                                                                         {"symmetries", Command::kSymmetries},
                                                                         {"jacobian", Command::kJacobian},
                                                                         {"diamond", Command::kDiamond}};
      auto it = std::find_if(names.begin(), names.end(), [&](const auto& p) { return p.first == value.text; });
      if (it == names.end()) fail_at(ErrorCode::kSyntaxError, value.line, value.column, "unknown command '" + value.text + "'");
      job.command = it->second;
    } else if (key.text == "format") {
      if (value.text == "text") job.options.format = OutputFormat::kText;
      else if (value.text == "json") job.options.format = OutputFormat::kJson;
      else fail_at(ErrorCode::kSyntaxError, value.line, value.column, "format must be text or json");
    } else if (key.text == "closure_cap") {
      if (!std::all_of(value.text.begin(), value.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          value.text.size() > 12) {
        fail_at(ErrorCode::kSyntaxError, value.line, value.column, "closure_cap must be a positive integer");
      }
      job.options.closure_cap = std::stol(value.text);
    } else if (key.text == "verify") {
      if (value.text == "true") job.options.verify = true;
      else if (value.text == "false") job.options.verify = false;
      else fail_at(ErrorCode::kSyntaxError, value.line, value.column, "verify must be true or false");
    } else {
      fail_at(ErrorCode::kSyntaxError, key.line, key.column, "unknown key '" + key.text + "'");
    }
  }
  if (!f_text) throw Error(ErrorCode::kSyntaxError, "line 1, column 1: the job has no 'f = ...' statement");
  job.polynomial_text = f_text->text;

  if (vars_text) {
    job.variables_given = true;
    const Located body = list_body(*vars_text, "vars");
    for (const auto& v : split_top(body, ',')) {
      const bool ok = !v.text.empty() && std::isalpha(static_cast<unsigned char>(v.text[0])) &&
                      std::all_of(v.text.begin(), v.text.end(), [](char c) {
                        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                      });
      if (!ok) fail_at(ErrorCode::kSyntaxError, v.line, v.column, "bad variable name '" + v.text + "'");
      if (std::find(job.variables.begin(), job.variables.end(), v.text) != job.variables.end()) {
        fail_at(ErrorCode::kSyntaxError, v.line, v.column, "repeated variable '" + v.text + "'");
      }
      job.variables.push_back(v.text);
    }
  } else {
    job.variables = infer_variables(job.polynomial_text);
  }
  if (job.variables.empty()) fail_at(ErrorCode::kSyntaxError, f_text->line, f_text->column, "f has no variables");
  try {
    job.f = parse_poly(job.polynomial_text, job.variables);
  } catch (const Error& e) {
    fail_at(e.code(), f_text->line, f_text->column, message_of(e));
  }

  if (group_text) {
    job.group_given = true;
    const Located body = list_body(*group_text, "group");
    if (!body.text.empty()) {
      for (const auto& g : split_top(body, ',')) job.group.push_back(parse_generator(g, job.f.nvars()));
    }
  }
  return job;
}

std::vector<GroupElement> resolve_generators(const Job& job, const WeightSystem& w) {
  const int n = job.f.nvars();
  std::vector<GroupElement> out;
  if (!job.group_given) {
    out.push_back(make_jf(w));
    return out;
  }
  for (const auto& spec : job.group) {
    if (spec.kind != GeneratorSpec::Kind::kProduct) {
      const DiagonalGroup d = spec.kind == GeneratorSpec::Kind::kMaximalDiagonal ? diagonal_symmetries(job.f)
                                                                                 : diagonal_sl_symmetries(job.f);
      for (const auto& v : d.generators) out.push_back(GroupElement::diagonal(v));
      if (d.generators.empty()) out.push_back(GroupElement::identity(n));
      continue;
    }
    GroupElement g = GroupElement::identity(n);
    for (const auto& factor : spec.factors) {
      switch (factor.kind) {
        case GeneratorFactor::Kind::kJf: g = g * make_jf(w); break;
        case GeneratorFactor::Kind::kDiag: g = g * GroupElement::diagonal(factor.phases); break;
        case GeneratorFactor::Kind::kPerm: g = g * GroupElement::permutation(n, factor.cycles); break;
      }
    }
    out.push_back(g);
  }
  return out;
}

Report error_report(const Error& e) {
  Report r;
  r.data["schema_version"] = 1;
  r.data["error"] = {{"code", error_code_name(e.code())}, {"message", message_of(e)}};
  r.exit_code = exit_code_for(e.code());
  return r;
}

Report run(const Job& job) {
  Report report;
  ordered_json& d = report.data;
  d["schema_version"] = 1;
  d["command"] = command_name(job.command);
  d["f"] = job.f.to_string(job.variables);
  d["variables"] = job.variables;
  try {
    const QuasihomAnalysis a = analyze(job.f);
    d["weights"] = weights_json(a.weights);
    switch (job.command) {
      case Command::kAnalyze:
        d.update(analyze_json(job.f, a, job.variables));
        break;
      case Command::kSymmetries:
        d["calabi_yau"] = a.calabi_yau;
        d.update(symmetries_json(job, a, report));
        break;
      case Command::kJacobian:
        d.update(jacobian_json(job, a, report));
        break;
      case Command::kDiamond:
        d["calabi_yau"] = a.calabi_yau;
        diamond_json(job, a, report);
        break;
    }
  } catch (const Error& e) {
    d["error"] = {{"code", error_code_name(e.code())}, {"message", message_of(e)}};
    report.exit_code = exit_code_for(e.code());
  }
  return report;
}

std::string render_text(const ordered_json& r) {
  std::ostringstream out;
  if (r.contains("command")) out << "command: " << r["command"].get<std::string>() << "\n";
  if (r.contains("f")) out << "f = " << r["f"].get<std::string>() << "\n";
  if (r.contains("weights")) {
    const auto& w = r["weights"];
    out << "weights: d0 = " << w["d0"].dump() << ", d = (" << join(w["d"], ", ") << "), q = (" << join(w["q"], ", ")
        << ")\n";
  }
  if (r.contains("calabi_yau")) out << "Calabi-Yau: " << yes_no(r["calabi_yau"]) << "\n";
  if (r.contains("graph")) {
    out << "graph: kappa = (" << join(r["graph"]["kappa"], ", ") << "), " << r["graph"]["components"].size()
        << " component(s)\n";
    for (const auto& c : r["graph"]["components"]) {
      out << "  vertices {" << join(c["vertices"], ", ") << "}";
      if (!c["cycle"].empty()) out << ", cycle (" << join(c["cycle"], " ") << ")";
      out << "\n";
    }
  }
  if (r.contains("decomposition")) {
    const auto& dec = r["decomposition"];
    out << "decomposition: f0 = " << dec["f0"].get<std::string>() << "\n";
    for (const auto& t : dec["trees"]) out << "  tree: " << t.get<std::string>() << "\n";
    out << "  f_add = " << dec["f_add"].get<std::string>() << "\n";
    out << "  star-shaped: " << yes_no(dec["star_shaped"]) << "\n";
  }
  if (r.contains("exponent_matrix")) {
    out << "exponent matrix (det " << r["exponent_matrix"]["det"].dump() << "):\n";
    for (const auto& row : r["exponent_matrix"]["entries"]) out << "  " << join(row, " ") << "\n";
  }
  if (r.contains("classification")) {
    const auto& c = r["classification"];
    out << "invertible: " << yes_no(c["invertible"]);
    if (!c["reason"].get<std::string>().empty()) out << " (" << c["reason"].get<std::string>() << ")";
    out << "\n";
    for (const auto& atom : c["atoms"]) {
      out << "  " << atom["type"].get<std::string>() << " on x{" << join(atom["variables"], ", ") << "} exponents ("
          << join(atom["exponents"], ", ") << ")\n";
    }
  }
  if (r.contains("transpose")) {
    const auto& t = r["transpose"];
    if (t.contains("polynomial")) {
      out << "transpose: " << t["polynomial"].get<std::string>() << ", weights (" << join(t["weights"], ", ")
          << "), all positive: " << yes_no(t["all_positive"]) << "\n";
    } else {
      out << "transpose: " << t["error"].get<std::string>() << ": " << t["message"].get<std::string>() << "\n";
    }
  }
  for (const char* key : {"maximal_diagonal", "diagonal_sl", "graph_group"}) {
    if (!r.contains(key)) continue;
    const auto& g = r[key];
    out << key << ": order " << g["order"].dump() << ", invariant factors (" << join(g["invariant_factors"], ", ")
        << ")\n";
    for (const auto& gen : g["generators"]) out << "  " << gen.get<std::string>() << "\n";
  }
  if (r.contains("jf")) {
    out << "j_f = " << r["jf"]["element"].get<std::string>() << ", order " << r["jf"]["order"].dump()
        << ", in SL: " << yes_no(r["jf"]["in_sl"]) << "\n";
  }
  if (r.contains("group")) {
    const auto& g = r["group"];
    out << "group: order " << g["order"].dump() << ", " << g["conjugacy_class_count"].dump()
        << " conjugacy classes\n";
    if (g.contains("generators")) {
      for (const auto& gen : g["generators"])
        out << "  " << gen["element"].get<std::string>() << (gen["in_sl"].get<bool>() ? "" : "  (not in SL)") << "\n";
      out << "  contains j_f: " << yes_no(g["contains_jf"]) << ", inside SL: " << yes_no(g["in_sl"]) << "\n";
    }
  }
  if (r.contains("mu")) {
    out << "mu = " << r["mu"].dump() << ", c_hat = " << r["c_hat"].get<std::string>() << "\n";
    out << "graded dimensions:";
    for (const auto& e : r["graded_dimensions"])
      out << " " << e["degree"].get<std::string>() << ":" << e["dimension"].dump();
    out << "\n";
    out << "product formula agrees: " << yes_no(r["oracle_agrees"]) << "\n";
  }
  if (r.contains("sectors")) {
    out << "sectors (" << r["sectors"].size() << ", total dimension " << r["btot_dimension"].dump() << "):\n";
    std::size_t width = 1;
    for (const auto& s : r["sectors"]) width = std::max(width, s["g"].get<std::string>().size());
    for (const auto& s : r["sectors"]) {
      const std::string g = s["g"].get<std::string>();
      out << "  " << g << std::string(width - g.size() + 2, ' ') << "Ng " << s["Ng"].dump() << "  age "
          << s["age"].get<std::string>() << "  mu " << s["mu"].dump() << "\n";
    }
  }
  if (r.contains("oracle_agrees") && r.contains("invariant_blocks")) {
    out << "character formula agrees on every block: " << yes_no(r["oracle_agrees"]) << "\n";
  }
  if (r.contains("diamond")) {
    render_diamond(out, r["diamond"]);
    out << "total dimension: " << r["diamond"]["total"].dump() << "\n";
    for (const auto& o : r["diamond"]["outside"])
      out << "  outside the diamond: (" << join(o["charges"], ", ") << ") dimension " << o["dimension"].dump() << "\n";
  }
  if (r.contains("verification")) {
    const auto& v = r["verification"];
    if (v.contains("skipped")) {
      out << "verification: skipped\n";
    } else {
      out << "verification:\n";
      for (const auto& c : v["checks"]) {
        out << "  [" << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "] " << c["name"].get<std::string>() << ": "
            << c["witness"].get<std::string>() << "\n";
      }
    }
  }
  if (r.contains("error")) {
    out << "error: " << r["error"]["code"].get<std::string>() << ": " << r["error"]["message"].get<std::string>()
        << "\n";
  }
  return out.str();
}

std::string render(const Report& report, OutputFormat format) {
  if (format == OutputFormat::kJson) return report.data.dump(2) + "\n";
  return render_text(report.data);
}

}  // namespace lgo
