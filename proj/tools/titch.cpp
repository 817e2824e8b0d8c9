#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <unistd.h>

#include "titch/errors.hpp"
#include "titch/fuzz.hpp"
#include "titch/io.hpp"
#include "titch/selftest.hpp"

namespace {

using namespace titch;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string self_exe_path(const char* argv0) {
  char buf[4096];
  const ssize_t len = ::readlink("/proc/self/exe", buf, sizeof(buf) - 1);
  if (len > 0) {
    buf[len] = '\0';
    return buf;
  }
  return argv0 ? argv0 : "";
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (const TheoremViolation& e) {
    std::cerr << "THEOREM-VIOLATION: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

struct AnalyzeArgs {
  std::string file;
  std::string mode;
  unsigned n = 0;
  unsigned p = 0;
  std::string lambda;
  bool conjugate = false;
  long long m_max = 16;
  unsigned max_order = 8;
  std::string format = "text";
  std::string output;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const Instance inst = load_instance_file(a.file, a.max_order);
  const std::string mode = !a.mode.empty() ? a.mode : inst.mode.value_or("pair");
  const unsigned n = a.n ? a.n : inst.n.value_or(2);

  json out;
  std::string text;
  bool oracle_ok = true;
  bool hypothesis_ok = true;
  auto add_verdict = [&](const oracle::OracleVerdict& v) {
    out["oracle"].push_back(verdict_to_json(v));
    oracle_ok = oracle_ok && v.pass;
    text += "oracle " + v.identity + ": " + (v.pass ? "pass" : "FAIL " + v.detail) + "\n";
  };
  out["oracle"] = json::array();

  if (mode == "pair") {
    if (!inst.f || !inst.g) throw ParseError(a.file + ": pair analysis needs both f and g");
    std::optional<Rational> lam;
    if (!a.lambda.empty()) {
      auto r = rat_parse(a.lambda);
      if (!r) throw ParseError("--lambda: malformed rational \"" + a.lambda + "\"");
      lam = *r;
    }
    const PairReport rep = analyze_pair(*inst.f, *inst.g, n, lam);
    out["report"] = pair_report_to_json(rep);
    text = pair_report_text(rep) + text;
    add_verdict(oracle::check_pair(*inst.f, *inst.g, n, rep));
    add_verdict(oracle::check_convolution(*inst.f, *inst.g, a.m_max));
    if (n == 2) {
      const CorollaryN2Verdict cv = check_corollary_n2(*inst.f, *inst.g);
      out["corollary"] = corollary_to_json(cv);
      text += corollary_text(cv);
      if (!cv.agree) oracle_ok = false;
    }
  } else if (mode == "reflection") {
    if (!inst.f) throw ParseError(a.file + ": reflection analysis needs f");
    const ReflectionOutcome rep = analyze_reflection(*inst.f, a.conjugate);
    out["report"] = reflection_to_json(rep, a.conjugate);
    text = reflection_text(rep) + text;
    if (rep.applicable) {
      add_verdict(oracle::check_reflection(*inst.f, a.conjugate, rep));
      const Distribution fs = a.conjugate ? inst.f->conj_reflected() : inst.f->reflected();
      add_verdict(oracle::check_convolution(*inst.f, fs, a.m_max));
    } else {
      hypothesis_ok = false;  // supp(f * f#) escapes {0, 1/2}
    }
  } else if (mode == "power") {
    if (!inst.f) throw ParseError(a.file + ": power analysis needs f");
    const unsigned p = a.p ? a.p : inst.p.value_or(0);
    if (p == 0) throw ParseError(a.file + ": power analysis needs p (file key \"p\" or --p)");
    const PowerReport rep = analyze_power(*inst.f, n, p);
    out["report"] = power_report_to_json(rep);
    text = power_report_text(rep) + text;
    add_verdict(oracle::check_power(*inst.f, n, p, rep));
    add_verdict(oracle::check_convolution(*inst.f, convolve_power(*inst.f, p), a.m_max));
  } else {
    throw ParseError("--mode: expected pair, reflection or power");
  }

  write_output(a.output, a.format == "json" ? canonical_dump(out) : text);
  if (!oracle_ok) return 4;
  if (!hypothesis_ok) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"titch: exact convolution-support analysis on the circle"};
  app.require_subcommand(1);

  // convolve
  auto* conv = app.add_subcommand("convolve", "convolve the distributions of an instance file");
  std::vector<std::string> conv_files;
  std::string conv_output;
  unsigned conv_max_order = 8;
  conv->add_option("files", conv_files, "one instance file holding f and g, or two holding f each")
      ->required()
      ->expected(1, 2);
  conv->add_option("--output", conv_output, "output file (default stdout)");
  conv->add_option("--max-order", conv_max_order, "largest accepted derivative order");
  conv->callback([&]() {
    std::exit(guarded([&]() {
      Distribution f, g;
      if (conv_files.size() == 1) {
        const Instance inst = load_instance_file(conv_files[0], conv_max_order);
        if (!inst.f || !inst.g)
          throw ParseError(conv_files[0] + ": expected both \"f\" and \"g\"");
        f = *inst.f;
        g = *inst.g;
      } else {
        const Instance a = load_instance_file(conv_files[0], conv_max_order);
        const Instance b = load_instance_file(conv_files[1], conv_max_order);
        if (!a.f) throw ParseError(conv_files[0] + ": expected \"f\"");
        if (!b.f) throw ParseError(conv_files[1] + ": expected \"f\"");
        f = *a.f;
        g = *b.f;
      }
      write_output(conv_output, canonical_dump(dist_to_json(convolve(f, g))));
      return 0;
    }));
  });

  // analyze
  auto* ana = app.add_subcommand("analyze", "run a theorem analyzer on an instance file");
  AnalyzeArgs aa;
  ana->add_option("file", aa.file, "instance file")->required();
  ana->add_option("--mode", aa.mode, "pair | reflection | power (default: file, then pair)");
  ana->add_option("--n", aa.n, "rotation order n");
  ana->add_option("--p", aa.p, "convolution power p (power mode)");
  ana->add_option("--lambda", aa.lambda, "smaller user-chosen lambda for the certificate windows");
  ana->add_flag("--conjugate", aa.conjugate, "use the conjugated reflection variant");
  ana->add_option("--m-max", aa.m_max, "Fourier modes checked by the oracle");
  ana->add_option("--max-order", aa.max_order, "largest accepted derivative order");
  ana->add_option("--format", aa.format, "json | text")->check(CLI::IsMember({"json", "text"}));
  ana->add_option("--output", aa.output, "output file (default stdout)");
  ana->callback([&]() { std::exit(guarded([&]() { return cmd_analyze(aa); })); });

  // fuzz
  auto* fz = app.add_subcommand("fuzz", "randomized falsification suites");
  fuzz::FuzzConfig cfg;
  std::string fuzz_suite;
  fz->add_option("--seed", cfg.seed, "deterministic seed");
  fz->add_option("--count", cfg.count, "trials per suite and rotation order");
  fz->add_option("--n", cfg.ns, "rotation orders, comma separated")->delimiter(',');
  fz->add_option("--max-points", cfg.gen.max_points, "support points per distribution");
  fz->add_option("--max-order", cfg.gen.max_order, "largest derivative order generated");
  fz->add_option("--mix", cfg.mix_percent, "percent of symmetry-seeded pair instances");
  fz->add_option("--m-max", cfg.m_max, "Fourier modes checked by the oracle");
  fz->add_option("--output", cfg.counterexample_path, "counterexample file on failure");
  fz->add_option("--suite", fuzz_suite, "run a single suite")
      ->check(CLI::IsMember(fuzz::suite_names()));
  fz->callback([&]() {
    std::exit(guarded([&]() {
      const fuzz::FuzzOutcome out =
          fuzz_suite.empty() ? fuzz::run_all(cfg) : fuzz::run_suite(fuzz_suite, cfg);
      std::cout << out.log;
      std::cout << "total: trials=" << out.trials << " violations=" << out.violations << "\n";
      if (out.violations == 0) return 0;
      if (out.counterexample) {
        write_output(cfg.counterexample_path, canonical_dump(*out.counterexample));
        std::cout << "counterexample written to " << cfg.counterexample_path << "\n";
      }
      return 4;
    }));
  });

  // selftest
  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
  std::vector<int> st_only;
  bool st_quick = false;
  st->add_option("--only", st_only, "criterion ids, comma separated")->delimiter(',');
  st->add_flag("--quick", st_quick, "reduced trial counts, no runtime targets");
  st->callback([&]() {
    std::exit(guarded([&]() {
      bool all_pass = true;
      for (const auto& r : selftest::run(st_only, st_quick, self_exe_path(argv[0]))) {
        std::cout << selftest::format_line(r) << "\n";
        all_pass = all_pass && r.pass;
      }
      return all_pass ? 0 : 4;
    }));
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
