#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cycdesc/error.hpp"
#include "cycdesc/problem.hpp"

#ifndef CYCDESC_DEFAULT_CORPUS
#define CYCDESC_DEFAULT_CORPUS "corpus"
#endif

namespace {

using cycdesc::ErrorCode;

nlohmann::ordered_json fields_json(const std::vector<cycdesc::ReportField>& fields) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& [k, v] : fields) out.push_back({{"key", k}, {"value", v}});
  return out;
}

std::string report_json(const cycdesc::Report& r) {
  nlohmann::ordered_json out;
  out["header"] = fields_json(r.header);
  out["tasks"] = nlohmann::ordered_json::array();
  for (const auto& t : r.tasks) out["tasks"].push_back({{"task", t.task}, {"fields", fields_json(t.fields)}});
  out["exit_code"] = r.exit_code;
  return out.dump(2) + "\n";
}

int run_file(const std::string& path, const std::string& task, const std::string& format) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return static_cast<int>(ErrorCode::Syntax);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  cycdesc::Report report;
  try {
    report = cycdesc::run_problem(cycdesc::Problem::parse(buf.str()), task);
  } catch (const cycdesc::Error& e) {
    report.header.emplace_back("error", std::string(cycdesc::error_code_name(e.code())) + ": " + e.what());
    report.exit_code = static_cast<int>(e.code());
  }
  std::cout << (format == "json" ? report_json(report) : report.to_text());
  return report.exit_code;
}

int run_corpus(const std::string& dir, const std::string& filter, bool update) {
  const auto entries = cycdesc::verify_corpus(dir, filter, update);
  int failed = 0;
  for (const auto& e : entries) {
    std::cout << (e.matched ? "ok   " : "FAIL ") << e.name;
    if (!e.detail.empty()) std::cout << "  (" << e.detail << ")";
    std::cout << "\n";
    failed += !e.matched;
  }
  std::cout << entries.size() - failed << "/" << entries.size() << " files match\n";
  if (entries.empty()) return static_cast<int>(ErrorCode::GoldenMismatch);
  return failed ? static_cast<int>(ErrorCode::GoldenMismatch) : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle pullbacks and descent invariants for affine schemes"};
  app.require_subcommand(0, 1);

  std::string file, task, format = "text";
  app.add_option("file", file, "problem file");
  app.add_option("--task", task, "run only tasks with this command");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));

  auto* verify = app.add_subcommand("verify-corpus", "run the bundled examples against their golden files");
  std::string corpus = CYCDESC_DEFAULT_CORPUS, filter;
  bool update = false;
  verify->add_option("--corpus", corpus, "corpus directory");
  verify->add_option("--filter", filter, "glob on file names");
  verify->add_flag("--update", update, "rewrite golden files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_corpus(corpus, filter, update);
    if (file.empty()) {
      std::cerr << app.help();
      return static_cast<int>(ErrorCode::Syntax);
    }
    return run_file(file, task, format);
  } catch (const cycdesc::Error& e) {
    std::cerr << cycdesc::error_code_name(e.code()) << ": " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
