#include "surfsat/cli.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"surfsat: saturation, affinisation and fibre analysis of open surfaces"};
  app.require_subcommand(1);

  surfsat::cli::Request req;
  std::string format = "human";
  app.add_flag("--verbose", req.verbose, "log progress to stderr");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"human", "json"}));

  const std::map<std::string, std::string> help{
      {"analyze", "saturation, plan, affinisation dimension and fibre analysis"},
      {"saturate", "saturation verdict and saturation plan"},
      {"affdim", "dimension of the affinisation"},
      {"fibre", "fibre-type classification and Zariski checks"},
      {"mumford", "Mumford pullbacks and the induced intersection form"},
      {"hironaka", "blowup of P^2 at points of a cubic, with group-law obstruction"},
      {"validate", "consistency checks on the input data"}};

  for (const auto& [name, cmd] : surfsat::cli::command_table()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("input", req.input, "input JSON document")->required()->check(CLI::ExistingFile);
    sub->add_flag("--verbose", req.verbose, "log progress to stderr");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"human", "json"}));
    if (cmd == surfsat::cli::Command::Fibre) {
      sub->add_option("--subject", req.subject, "curves forming the subject (default: each boundary component)");
    }
    if (cmd == surfsat::cli::Command::Mumford) {
      sub->add_option("--exceptional", req.exceptional, "curves to contract (default: the saturation plan)");
    }
    sub->callback([&req, cmd = cmd] { req.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : surfsat::cli::kInputError;
  }
  req.format = format == "json" ? surfsat::cli::Format::Json : surfsat::cli::Format::Human;
  return surfsat::cli::run(req, std::cout, std::cerr);
}
