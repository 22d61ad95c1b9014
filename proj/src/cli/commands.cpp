#include "cartan/cli.hpp"
#include "cartan/equivalence.hpp"
#include "cartan/error.hpp"
#include "cartan/render.hpp"
#include "json.hpp"

namespace cartan {
namespace {

using Json = nlohmann::ordered_json;

// ode2 inputs are read on a chart that also knows q, r and a3 so that
// using them is reported as a domain error rather than an unknown name.
ChartPtr ode2_input_chart() {
  static const ChartPtr chart = [] {
    ChartSpec spec;
    spec.coordinates = {"x", "y", "p", "q", "r"};
    spec.parameters = {"a3"};
    spec.functions = {{"f", {"x", "y", "p"}}};
    return Chart::make(spec);
  }();
  return chart;
}

class Context {
 public:
  explicit Context(const Command& c) : cmd_(c) {}

  const std::string& raw(const std::string& flag) const {
    auto it = cmd_.inputs.find(flag);
    if (it == cmd_.inputs.end()) throw ParseError("missing --" + flag, 0);
    return it->second;
  }
  std::string raw_or(const std::string& flag, const std::string& fallback) const {
    auto it = cmd_.inputs.find(flag);
    return it == cmd_.inputs.end() ? fallback : it->second;
  }

  Expression ode2(const std::string& flag, const std::string& fallback = "") const {
    std::string text = fallback.empty() ? raw(flag) : raw_or(flag, fallback);
    ChartPtr in = ode2_input_chart();
    Expression e = parse_expression(text, in);
    for (Symbol s : e.symbols())
      if (s.is_variable()) {
        const std::string& name = in->variable_name(Chart::variable_of(s));
        if (name == "q" || name == "r") throw DomainError("--" + flag + " may not depend on " + name);
      }
    return e.chart() ? rebase(e, ode2_chart()) : Expression(ode2_chart(), 0);
  }
  Expression on(const ChartPtr& chart, const std::string& flag, const std::string& fallback) const {
    return parse_expression(raw_or(flag, fallback), chart);
  }

  std::string show(const Expression& e) const {
    return cmd_.format == OutputFormat::Latex ? to_latex(e) : to_text(e);
  }
  OutputFormat format() const { return cmd_.format; }
  const Command& command() const { return cmd_; }

 private:
  const Command& cmd_;
};

std::string basis_name(std::size_t i, std::size_t theta_count, OutputFormat format) {
  bool latex = format == OutputFormat::Latex;
  if (i >= theta_count) {
    std::size_t k = i - theta_count + 1;
    return latex ? "\\pi^{" + std::to_string(k) + "}" : "pi" + std::to_string(k);
  }
  return latex ? "\\theta^{" + std::to_string(i + 1) + "}" : "theta" + std::to_string(i + 1);
}

// "d theta1 = -theta1^theta4 + (...)*theta2^theta3"
std::string structure_line(std::size_t i, const DifferentialForm& w, std::size_t theta_count,
                           const Context& ctx) {
  bool latex = ctx.format() == OutputFormat::Latex;
  std::string out = "d " + basis_name(i, theta_count, ctx.format()) + " = ";
  if (w.is_zero()) return out + "0";
  bool first = true;
  for (const auto& [key, c] : w.terms()) {
    std::string basis;
    for (std::size_t k : indices_of(key)) {
      if (!basis.empty()) basis += latex ? " \\wedge " : "^";
      basis += basis_name(k, theta_count, ctx.format());
    }
    bool simple = c.is_constant() || (c.is_polynomial() && c.numerator().size() == 1);
    bool negative = simple && ctx.show(c).front() == '-';
    Expression magnitude = negative ? -c : c;
    std::string coeff;
    if (!(magnitude.is_constant() && magnitude.constant_value() == 1)) {
      std::string s = ctx.show(magnitude);
      coeff = simple ? s : "(" + s + ")";
      coeff += latex ? " " : "*";
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coeff + basis;
    first = false;
  }
  return out;
}

std::string emit(const Json& j, const std::vector<std::string>& lines, OutputFormat format) {
  if (format == OutputFormat::Json) return j.dump(2) + "\n";
  std::string out;
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

std::string flag_text(bool b) { return b ? "true" : "false"; }

std::string check_flat(const Context& ctx) {
  const std::string& problem = ctx.command().problem;
  FlatnessVerdict v;
  if (problem == "ode2") {
    v = check_flat_ode2(ctx.ode2("f"));
  } else if (problem == "odesys") {
    ChartPtr c = ode_system_chart();
    v = check_flat_ode_system(ctx.on(c, "F1", "F1"), ctx.on(c, "F2", "F2"));
  } else if (problem == "pdesys") {
    ChartPtr c = pde_system_chart();
    v = check_flat_pde_system(ctx.on(c, "f11", "f11"), ctx.on(c, "f12", "f12"), ctx.on(c, "f22", "f22"));
  } else {
    throw DomainError("unknown problem '" + problem + "'");
  }
  Json j;
  j["problem"] = problem;
  j["flat"] = v.flat;
  j["residuals"] = Json::array();
  std::vector<std::string> lines = {"flat: " + flag_text(v.flat)};
  for (std::size_t k = 0; k < v.residuals.size(); ++k) {
    std::string r = ctx.show(v.residuals[k]);
    j["residuals"].push_back(r);
    lines.push_back(v.names[k] + " = " + r);
  }
  return emit(j, lines, ctx.format());
}

std::string invariants(const Context& ctx) {
  EquivalenceReport rep = run_equivalence_ode2(ctx.ode2("f", "f"));
  Json j;
  j["problem"] = "ode2";
  j["invariants"] = {{"I1", ctx.show(rep.I1)}, {"I2", ctx.show(rep.I2)}, {"I3", ctx.show(rep.I3)}};
  bool latex = ctx.format() == OutputFormat::Latex;
  std::vector<std::string> lines;
  const Expression* inv[] = {&rep.I1, &rep.I2, &rep.I3};
  for (int k = 0; k < 3; ++k)
    lines.push_back((latex ? "I_{" + std::to_string(k + 1) + "}" : "I" + std::to_string(k + 1)) + " = " +
                    ctx.show(*inv[k]));
  return emit(j, lines, ctx.format());
}

std::string syzygies(const Context& ctx) {
  EquivalenceReport rep = run_equivalence_ode2(ctx.ode2("f", "f"));
  Json j;
  j["problem"] = "ode2";
  j["syzygies"] = Json::array();
  std::vector<std::string> lines;
  for (const Expression& s : rep.syzygies) {
    std::string text = ctx.show(s) + " = 0";
    j["syzygies"].push_back(text);
    lines.push_back(text);
  }
  return emit(j, lines, ctx.format());
}

std::string structure(const Context& ctx) {
  Expression f = ctx.ode2("f", "f");
  std::vector<std::string> lines;
  if (ctx.command().max_prolong < 0) throw DomainError("--max-prolong must be nonnegative");
  if (ctx.command().max_prolong == 0) {
    Ode2Problem pb = make_ode2_problem(f);
    std::vector<DifferentialForm> all = pb.lifted;
    all.push_back(pb.pi);
    Coframe frame(all);
    for (std::size_t i = 0; i < pb.lifted.size(); ++i)
      lines.push_back(structure_line(i, express_in_coframe(d(pb.lifted[i]), frame), pb.lifted.size(), ctx));
  } else {
    EquivalenceReport rep = run_equivalence_ode2(f);
    for (std::size_t i = 0; i < rep.structure.size(); ++i)
      lines.push_back(structure_line(i, rep.structure[i], rep.structure.size(), ctx));
  }
  Json j;
  j["problem"] = "ode2";
  j["structure"] = lines;
  return emit(j, lines, ctx.format());
}

std::string painleve(const Context& ctx) {
  PainleveAnswer a = painleve_map(ctx.ode2("f"));
  Json j;
  j["problem"] = "painleve";
  j["equivalent"] = a.equivalent;
  std::vector<std::string> lines = {"equivalent: " + flag_text(a.equivalent)};
  if (a.in_class) {
    j["eta"] = ctx.show(a.eta);
    j["C"] = ctx.show(a.C);
    lines.push_back("eta = " + ctx.show(a.eta));
    lines.push_back("C = " + ctx.show(a.C));
  }
  if (!a.equivalent) {
    j["residuals"] = {ctx.show(a.residual)};
    lines.push_back("failing: " + a.failing + " = " + ctx.show(a.residual));
  }
  return emit(j, lines, ctx.format());
}

std::string pullback(const Context& ctx) {
  Expression f = pullback_ode2(ctx.ode2("eta"), ctx.ode2("C", "0"), ctx.ode2("target", "0"));
  Json j;
  j["problem"] = "pullback";
  j["f"] = ctx.show(f);
  return emit(j, {"f = " + ctx.show(f)}, ctx.format());
}

std::string swell(const Context& ctx) {
  ChartPtr c = ode3_chart();
  SwellReport s = contact_prolongation_ode3(ctx.on(c, "xi", "xi"), ctx.on(c, "eta", "eta"));
  Json j;
  j["problem"] = "swell";
  j["swell"] = {{"monomials_rbar", s.monomials[2]}};
  std::vector<std::string> lines = {"monomials: pbar " + std::to_string(s.monomials[0]) + ", qbar " +
                                    std::to_string(s.monomials[1]) + ", rbar " +
                                    std::to_string(s.monomials[2])};
  if (s.monomials[2] <= 20) {
    lines.push_back("pbar = " + ctx.show(s.pbar));
    lines.push_back("qbar = " + ctx.show(s.qbar));
    lines.push_back("rbar = " + ctx.show(s.rbar));
  }
  return emit(j, lines, ctx.format());
}

}  // namespace

Outcome run(const Command& command) {
  Outcome out;
  Context ctx(command);
  try {
    if (command.name == "check-flat")
      out.output = check_flat(ctx);
    else if (command.name == "invariants")
      out.output = invariants(ctx);
    else if (command.name == "syzygies")
      out.output = syzygies(ctx);
    else if (command.name == "structure")
      out.output = structure(ctx);
    else if (command.name == "painleve")
      out.output = painleve(ctx);
    else if (command.name == "pullback")
      out.output = pullback(ctx);
    else if (command.name == "swell-demo")
      out.output = swell(ctx);
    else
      throw ParseError("unknown command '" + command.name + "'", 0);
  } catch (const ParseError& e) {
    out.exit_code = 2;
    out.error = e.what();
  } catch (const UnknownName& e) {
    out.exit_code = 2;
    out.error = e.what();
  } catch (const Error& e) {
    out.exit_code = 3;
    out.error = e.what();
  }
  return out;
}

}  // namespace cartan
