#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "permzhu/run.hpp"

namespace {

using permzhu::RunConfig;
using permzhu::RunResult;

struct CliOptions {
  RunConfig config;
  std::string cutoff_str, gen_cutoff_str, cycles_str, checks_str;
};

void attach_common(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--algebra", opt.config.algebra, "base algebra (only 'fermion' ships)")
      ->default_val("fermion");
  cmd->add_option("--k", opt.config.k, "number of tensor factors");
  cmd->add_option("--cycles", opt.cycles_str, "cycle type, comma separated (default: the k-cycle)");
  cmd->add_option("--cutoff", opt.cutoff_str, "report cutoff N as 'n' or 'p/2'");
  cmd->add_option("--gen-cutoff", opt.gen_cutoff_str, "relation generation weight (default N+2)");
  cmd->add_option("--checks", opt.checks_str,
                  "comma list: well-defined,homomorphism,iso,corollary,conjugation");
  cmd->add_option("--out", opt.config.out_path, "write the JSON report here instead of stdout");
  cmd->add_option("--cache-dir", opt.config.cache_dir,
                  "O-span cache directory (PERMZHU_CACHE_DIR overrides)");
  cmd->add_option("--threads", opt.config.threads, "worker threads for relation generation");
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int finalize_options(CliOptions& opt) {
  if (!opt.cutoff_str.empty()) {
    opt.config.cutoff = permzhu::Weight::parse(opt.cutoff_str);
    opt.config.has_cutoff = true;
  }
  if (!opt.gen_cutoff_str.empty()) {
    opt.config.gen_cutoff = permzhu::Weight::parse(opt.gen_cutoff_str);
    opt.config.has_gen_cutoff = true;
  }
  for (const std::string& c : split_csv(opt.cycles_str)) opt.config.cycles.push_back(std::stoi(c));
  opt.config.checks = split_csv(opt.checks_str);
  if (const char* env = std::getenv("PERMZHU_CACHE_DIR")) opt.config.cache_dir = env;
  return 0;
}

int emit(const RunResult& result, const std::string& out_path) {
  const std::string text = permzhu::render_report(result.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact twisted Zhu algebras of permutation orbifolds (free fermion)"};
  app.require_subcommand(1);

  CliOptions compute_opt, verify_opt;
  CLI::App* compute = app.add_subcommand("compute", "quotient dimensions and structure constants");
  attach_common(compute, compute_opt);
  CLI::App* verify = app.add_subcommand("verify", "check the isomorphism theorems at cutoff");
  attach_common(verify, verify_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (compute->parsed()) {
      finalize_options(compute_opt);
      return emit(permzhu::run_compute(compute_opt.config), compute_opt.config.out_path);
    }
    finalize_options(verify_opt);
    return emit(permzhu::run_verify(verify_opt.config), verify_opt.config.out_path);
  } catch (const permzhu::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
