#include <iostream>

#include "CLI11.hpp"
#include "cartan/cli.hpp"

namespace {

void add_inputs(CLI::App* sub, std::map<std::string, std::string>& inputs,
                std::initializer_list<const char*> flags) {
  for (const char* f : flags)
    sub->add_option_function<std::string>(std::string("--") + f,
                                          [&inputs, f](const std::string& v) { inputs[f] = v; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cartan: equivalence method for differential equations"};
  app.require_subcommand(1);

  cartan::Command cmd;
  std::string format = "text";
  const std::map<std::string, cartan::OutputFormat> formats = {{"text", cartan::OutputFormat::Text},
                                                               {"json", cartan::OutputFormat::Json},
                                                               {"latex", cartan::OutputFormat::Latex}};
  app.add_option("--format", format)->check(CLI::IsMember({"text", "json", "latex"}));

  auto* check = app.add_subcommand("check-flat", "decide equivalence to the flat equation or system");
  check->add_option("problem", cmd.problem)->required()->check(CLI::IsMember({"ode2", "odesys", "pdesys"}));
  add_inputs(check, cmd.inputs, {"f", "F1", "F2", "f11", "f12", "f22"});

  const std::pair<const char*, const char*> ode2_commands[] = {
      {"invariants", "fundamental invariants I1, I2, I3 of y'' = f"},
      {"syzygies", "relations among the invariants and their frame derivatives"},
      {"structure", "structure equations on the invariant coframe"},
      {"painleve", "map y'' = f onto y'' = 6*y^2 + x if possible"}};
  for (auto [name, help] : ode2_commands) {
    auto* sub = app.add_subcommand(name, help);
    add_inputs(sub, cmd.inputs, {"f"});
    if (std::string(name) == "structure") sub->add_option("--max-prolong", cmd.max_prolong);
  }
  add_inputs(app.add_subcommand("pullback", "pull back y'' = target along (x + C, eta)"), cmd.inputs,
             {"eta", "C", "target"});
  add_inputs(app.add_subcommand("swell-demo", "third-order contact prolongation"), cmd.inputs, {"xi", "eta"});

  for (auto* sub : app.get_subcommands({})) sub->add_option("--format", format)->check(CLI::IsMember({"text", "json", "latex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cmd.name = app.get_subcommands().front()->get_name();
  cmd.format = formats.at(format);
  cartan::Outcome out = cartan::run(cmd);
  std::cout << out.output;
  if (!out.error.empty()) std::cerr << "error: " << out.error << "\n";
  return out.exit_code;
}
