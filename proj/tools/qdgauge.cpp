#include <iostream>

#include "CLI11.hpp"
#include "qdg/campaign.hpp"
#include "qdg/hilbert.hpp"

using namespace qdg::cli;

int main(int argc, char** argv) {
  CLI::App app{"qdgauge: gauging checks for quantum double lattice models"};
  app.require_subcommand(1);

  std::string target, bf, out;
  bool override_envelope = false;
  auto* run = app.add_subcommand("run", "run a campaign file or shipped campaign name");
  run->add_option("campaign", target, "path to a JSON campaign or a shipped name")->required();
  run->add_flag("--override-envelope", override_envelope, "allow states above 2^22 amplitudes");
  run->add_option("--bf-weights", bf, "plaquette weighting")->check(CLI::IsMember({"paper", "projector"}));
  run->add_option("--out", out, "report directory");

  auto* list = app.add_subcommand("list-campaigns", "list shipped campaigns");
  std::string name;
  auto* desc = app.add_subcommand("describe", "show a shipped campaign");
  desc->add_option("name", name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*list) {
      for (const auto& c : shipped_campaigns()) std::cout << c.name << "  " << c.description << "\n";
      return kExitPass;
    }
    if (*desc) {
      std::cout << describe(name);
      return kExitPass;
    }
    const Campaign c = load_campaign(target);
    RunOptions opt;
    opt.override_envelope = override_envelope;
    if (!bf.empty()) opt.bf_weights = bf;
    if (!out.empty()) opt.out_dir = out;
    const RunResult r = run_campaign(c, opt);
    if (r.exit_code == kExitConfig || r.exit_code == kExitEnvelope) {
      std::cerr << "qdgauge: " << r.message << "\n";
      return r.exit_code;
    }
    const std::string dir = opt.out_dir.value_or(c.output.empty() ? "reports/" + c.name : c.output);
    write_reports(r, dir);
    for (const auto& s : suite_order()) {
      auto it = r.suites.find(s);
      if (it == r.suites.end()) continue;
      int fails = 0;
      for (const auto& ch : it->second.checks)
        if (!ch.pass) {
          ++fails;
          std::cout << "  FAIL " << ch.id << " [" << ch.site << "] residual " << ch.residual << " tol " << ch.tolerance
                    << (ch.note.empty() ? "" : " (" + ch.note + ")") << "\n";
        }
      std::cout << (fails ? "FAIL " : "PASS ") << s << " (" << it->second.checks.size() << " checks)\n";
    }
    std::cout << "reports written to " << dir << "\n";
    return r.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "qdgauge: config error in " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qdgauge: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qdg::EnvelopeError& e) {
    std::cerr << "qdgauge: " << e.what() << "; rerun with --override-envelope\n";
    return kExitEnvelope;
  }
}
