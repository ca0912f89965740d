// fdacheck: run a named verification task, store its JSON report and
// optionally compare it against a golden report.

#include <CLI11.hpp>

#include <iostream>

#include "fda/conventions.hpp"
#include "fda/parallel.hpp"
#include "fda/tasks.hpp"

namespace {

void print_tree(const fda::Report& r, int depth) {
  std::cout << std::string(2 * depth, ' ') << '[' << fda::to_string(r.verdict) << "] " << r.name;
  if (!r.message.empty())
    std::cout << ": " << r.message;
  if (r.error)
    std::cout << " (" << *r.error << ')';
  std::cout << '\n';
  for (const auto& [k, v] : r.pinned)
    std::cout << std::string(2 * depth + 4, ' ') << k << " = " << v << '\n';
  for (const auto& c : r.checks)
    print_tree(c, depth + 1);
}

int error_exit(const fda::Error& e) {
  std::cerr << "fdacheck: " << fda::to_string(e.code()) << ": " << e.what() << '\n';
  return e.code() == fda::Errc::capped || e.code() == fda::Errc::unsupported ? 2 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of super-Lie-algebra cocycles and their rational homotopy models"};
  fda::TaskConfig config;
  std::string out_dir = "reports";
  std::string golden_in, golden_out;
  bool as_json = false, list = false, no_save = false, show_ledger = false;
  unsigned threads = 0;

  app.add_option("--task", config.task, "task id (see --list)");
  app.add_flag("--long", config.long_run, "enable tr(omega^7) and the beta family");
  app.add_option("--cap", config.cap, "basis size cap for linear algebra");
  app.add_option("--out", out_dir, "report directory");
  app.add_flag("--no-save", no_save, "do not write a report file");
  app.add_flag("--json", as_json, "print the report document as JSON");
  app.add_option("--golden", golden_in, "compare pinned scalars against this golden report");
  app.add_option("--write-golden", golden_out, "write the pinned scalars as a golden report");
  app.add_option("--ledger-hash", config.ledger_hash, "expected convention ledger hash");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_flag("--list", list, "list task ids");
  app.add_flag("--conventions", show_ledger, "print the convention ledger and its hash");
  for (const char* key : {"alpha", "beta", "max-degree", "k", "n", "d", "p", "input", "samples"})
    app.add_option_function<std::string>(std::string("--") + key,
                                         [&config, key](const std::string& v) { config.params[key] = v; });
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& t : fda::task_list())
      std::cout << t.id << "  " << t.summary << '\n';
    return 0;
  }
  if (show_ledger) {
    std::cout << fda::convention_ledger() << "hash: " << fda::ledger_hash() << '\n';
    return 0;
  }
  if (config.task.empty()) {
    std::cerr << "fdacheck: --task is required (try --list)\n";
    return 1;
  }
  if (threads)
    fda::set_thread_count(threads);

  try {
    fda::Report report = fda::run_task(config);
    if (!golden_in.empty()) {
      const auto golden = fda::golden_from_json(fda::read_json_file(golden_in));
      report.add(fda::compare_golden(fda::make_golden(report, config), golden));
    }
    if (!golden_out.empty())
      fda::write_json_file(golden_out, fda::to_json(fda::make_golden(report, config)));
    std::filesystem::path saved;
    if (!no_save) {
      std::filesystem::create_directories(out_dir);
      saved = fda::write_report(report, config, out_dir);
    }
    if (as_json) {
      std::cout << fda::report_document(report, config, "").dump(2) << '\n';
    } else {
      print_tree(report, 0);
      std::cout << "time: " << report.seconds << " s\n";
      if (!saved.empty())
        std::cout << "report: " << saved.string() << '\n';
    }
    return fda::exit_code(report);
  } catch (const fda::Error& e) {
    return error_exit(e);
  } catch (const std::exception& e) {
    std::cerr << "fdacheck: " << e.what() << '\n';
    return 1;
  }
}
