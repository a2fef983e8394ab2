#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "uptrans/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"uptrans: univalent parametricity translations and transports"};
  std::string command, format = "text";
  std::vector<std::string> paths;
  uint64_t budget = uptrans::kDefaultBudget;
  bool export_prelude = false;
  app.add_option("command", command, "check | translate | transport | replay | bench")->required();
  app.add_option("files", paths, "declaration files")->check(CLI::ExistingFile);
  app.add_option("--budget", budget, "reduction step budget per item");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json-lines"}));
  app.add_flag("--export-prelude", export_prelude, "print the embedded prelude and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (export_prelude) {
    std::cout << uptrans::export_prelude();
    return 0;
  }
  auto cmd = uptrans::parse_command(command);
  if (!cmd) {
    std::cerr << "unknown command '" << command << "'\n" << app.help();
    return 2;
  }

  std::vector<std::string> texts;
  for (const auto& p : paths) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    texts.push_back(ss.str());
  }
  std::vector<uptrans::SourceFile> files;
  for (size_t k = 0; k < paths.size(); ++k) files.push_back({paths[k], texts[k]});

  uptrans::RunOptions opts;
  opts.budget = budget;
  try {
    uptrans::RunResult res = uptrans::run(*cmd, files, opts);
    auto fmt = format == "json-lines" ? uptrans::ReportFormat::JsonLines : uptrans::ReportFormat::Text;
    std::cout << uptrans::emit_report(res.reports, fmt);
    return res.exit_code;
  } catch (const uptrans::Error& e) {
    std::cerr << uptrans::describe(e) << "\n";
    return e.kind == uptrans::ErrorKind::ParseError || e.kind == uptrans::ErrorKind::Usage ? 2 : 1;
  }
}
