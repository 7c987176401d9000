// Batch front end: one JSON job per input line, one result per output line.
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qs/job.hpp"

namespace {

std::size_t default_depth() {
  const char* env = std::getenv("QS_MAX_DEPTH");
  if (env == nullptr || *env == '\0') return 24;
  try {
    const long v = std::stol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  std::cerr << "qs: ignoring invalid QS_MAX_DEPTH='" << env << "'\n";
  return 24;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide simplicity of torus relation algebras from JSON job lines"};
  std::string input;
  unsigned jobs = 1;
  std::string format = "json";
  app.add_option("--input", input, "Input file with one JSON job per line (default: stdin)");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  CLI11_PARSE(app, argc, argv);

  std::vector<std::string> lines;
  {
    std::ifstream file;
    if (!input.empty()) {
      file.open(input);
      if (!file) {
        std::cerr << "qs: cannot open " << input << "\n";
        return 1;
      }
    }
    std::istream& in = input.empty() ? std::cin : file;
    for (std::string line; std::getline(in, line);)
      if (!blank(line)) lines.push_back(line);
  }

  const std::size_t depth = default_depth();
  const qs::OutputFormat fallback = format == "text" ? qs::OutputFormat::Text : qs::OutputFormat::Json;
  std::vector<qs::JobResult> results(lines.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < lines.size(); i = next++) results[i] = qs::run_line(lines[i], depth, fallback);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs && t < lines.size(); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  for (const auto& r : results) {
    std::cout << r.output;
    if (fallback == qs::OutputFormat::Json || r.output.empty() || r.output.back() != '\n') std::cout << "\n";
    if (r.exit_code == 1) {
      code = 1;
    } else if (r.exit_code == 2 && code == 0) {
      code = 2;
    }
  }
  return code;
}
