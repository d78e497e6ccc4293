#include "schauder/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "schauder/errors.hpp"
#include "schauder/generators.hpp"
#include "schauder/instance_io.hpp"
#include "schauder/linalg.hpp"
#include "schauder/multiplier.hpp"
#include "schauder/rescale.hpp"
#include "schauder/verify.hpp"

namespace schauder::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

json to_json(const FrameBounds& b) { return {{"lower", b.lower}, {"upper", b.upper}, {"is_frame", b.is_frame}}; }

json to_json(const RVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json to_json(std::span<const Complex> v) {
  json arr = json::array();
  for (const auto& c : v) arr.push_back(json::array({c.real(), c.imag()}));
  return arr;
}

fs::path csv_path(const std::string& out) {
  fs::path p(out);
  if (p.extension() == ".json") return p.replace_extension(".csv");
  return fs::path(out + ".csv");
}

void emit(const std::string& out, const json& report, std::ostream& log) {
  if (out.empty()) {
    log << report.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error(out + ": cannot open for writing");
  f << report.dump(2) << "\n";
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Flat table of the given scalar columns of report["records"].
void emit_csv(const std::string& out, const json& records, const std::vector<std::string>& columns) {
  if (out.empty()) return;
  std::ofstream f(csv_path(out));
  if (!f) throw std::runtime_error(csv_path(out).string() + ": cannot open for writing");
  for (std::size_t c = 0; c < columns.size(); ++c) f << (c ? "," : "") << columns[c];
  f << "\n";
  for (const auto& rec : records) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      f << (c ? "," : "");
      if (rec.contains(columns[c])) f << csv_cell(rec[columns[c]]);
    }
    f << "\n";
  }
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

FramePair generate(const GenConfig& cfg, Rng& rng) {
  if (cfg.n < 1 || cfg.d < 1) throw UsageError("gen: --n and --d must be at least 1");
  if (!(cfg.scale_lo > 0) || !(cfg.scale_hi >= cfg.scale_lo)) throw UsageError("gen: need 0 < scale-lo <= scale-hi");
  const bool mangled = cfg.scale_lo != 1.0 || cfg.scale_hi != 1.0;
  if (cfg.kind == "gaussian") {
    auto pair = gen::gaussian(cfg.n, cfg.d, rng);
    return mangled ? gen::mangle(pair, cfg.scale_lo, cfg.scale_hi, rng) : pair;
  }
  if (cfg.kind == "schauder_mangled") {
    if (cfg.n < cfg.d) throw UsageError("gen: schauder_mangled needs n >= d");
    const auto pair = gen::canonical_dual(cfg.n, cfg.d, rng);
    if (!is_schauder_identity(pair, 1e-10)) throw ConvergenceError("gen: canonical dual is not exact");
    return gen::mangle(pair, cfg.scale_lo, cfg.scale_hi, rng);
  }
  if (cfg.kind == "onb_union") {
    if (cfg.n != 2 * cfg.d) throw UsageError("gen: onb_union needs n = 2d");
    return gen::onb_union(cfg.d, rng);
  }
  if (cfg.kind == "d1_scalars") {
    if (cfg.d != 1) throw UsageError("gen: d1_scalars needs d = 1");
    return gen::d1_scalars(cfg.n, rng);
  }
  throw UsageError("gen: unknown kind '" + cfg.kind + "'");
}

std::optional<MultiplierNormEstimate> grid_if_small(const FramePair& pair, int phase_steps) {
  if (pair.size() > kGridMaxTerms || phase_steps < 8) return std::nullopt;
  return norm_oracle_grid(pair, phase_steps);
}

std::vector<io::InstanceFile> load_all(const std::string& in) {
  if (in.empty()) throw UsageError("missing input path");
  std::vector<io::InstanceFile> out;
  for (const auto& p : io::instance_paths(in)) out.push_back(io::read_instance(p));
  if (out.empty()) throw UsageError(in + ": no instance files");
  return out;
}

template <typename Fn>
int guarded(std::ostream& log, Fn fn) {
  try {
    return fn();
  } catch (const io::ParseError& e) {
    log << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    log << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeError& e) {
    log << "size error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

std::string replay_path(const std::string& out, const std::string& suite, int index) {
  const std::string base = out.empty() ? "schauder-verify" : fs::path(out).replace_extension("").string();
  return base + ".replay-" + suite + "-" + std::to_string(index) + ".frame.json";
}

}  // namespace

std::vector<std::pair<long, long>> parse_grid(const std::string& spec) {
  std::vector<std::pair<long, long>> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto x = item.find('x');
    if (x == std::string::npos) throw std::invalid_argument("grid entry '" + item + "' is not NxD");
    std::size_t used_n = 0, used_d = 0;
    const long n = std::stol(item.substr(0, x), &used_n);
    const long d = std::stol(item.substr(x + 1), &used_d);
    if (used_n != x || used_d != item.size() - x - 1 || n < 1 || d < 1)
      throw std::invalid_argument("grid entry '" + item + "' is not NxD");
    out.emplace_back(n, d);
  }
  return out;
}

int cmd_gen(const GenConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    Rng rng(cfg.seed);
    io::InstanceFile inst{generate(cfg, rng), {}};
    inst.metadata.seed = cfg.seed;
    inst.metadata.generator = cfg.kind;
    std::ostringstream desc;
    desc << "n=" << inst.pair.size() << " d=" << inst.pair.dim() << " scale=[" << cfg.scale_lo << ", "
         << cfg.scale_hi << "]";
    inst.metadata.description = desc.str();
    if (cfg.out.empty())
      log << io::serialize_instance(inst);
    else
      io::write_instance(cfg.out, inst);
    return kExitOk;
  });
}

int cmd_analyze(const AnalyzeConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const auto paths = io::instance_paths(cfg.in);
    const auto instances = load_all(cfg.in);
    json records = json::array();
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const FramePair& pair = instances[i].pair;
      const auto alt = norm_lower_alternating(pair);
      json rec{{"file", paths[i].string()},
               {"n", pair.size()},
               {"d", pair.dim()},
               {"frame_bounds_x", to_json(bessel_and_frame_bounds(pair.xs()))},
               {"frame_bounds_y", to_json(bessel_and_frame_bounds(pair.ys()))},
               {"schauder_deviation", schauder_deviation(pair)},
               {"is_schauder", is_schauder_identity(pair)},
               {"phi_norm_lower", alt.value}};
      if (const auto grid = grid_if_small(pair, cfg.phase_steps)) rec["phi_norm_oracle"] = grid->value;
      records.push_back(std::move(rec));
    }
    json report{{"command", "analyze"}, {"records", records}, {"summary", {{"instances", records.size()}}}};
    emit(cfg.out, report, log);
    emit_csv(cfg.out, records, {"file", "n", "d", "schauder_deviation", "phi_norm_lower", "phi_norm_oracle"});
    return kExitOk;
  });
}

int cmd_rescale(const RescaleConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    if (cfg.max_iters < 0 || !(cfg.tol > 0) || !(cfg.step > 0)) throw UsageError("rescale: invalid optimizer flags");
    const auto paths = io::instance_paths(cfg.in);
    const auto instances = load_all(cfg.in);
    OptimizeOptions opts;
    opts.max_iters = cfg.max_iters;
    opts.tol = cfg.tol;
    opts.steps.initial = cfg.step;
    opts.lower.seed = cfg.seed;
    opts.alternating.seed = cfg.seed;

    json records = json::array();
    int failures = 0;
    double max_ratio = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const FramePair& pair = instances[i].pair;
      const auto bracket = optimize(pair, opts);
      const auto scaling = extract_scaling(pair, bracket.weights);
      const FramePair scaled = pair.reparameterized(scaling.alpha);
      const auto bx = bessel_and_frame_bounds(scaled.xs());
      const auto by = bessel_and_frame_bounds(scaled.ys());
      const bool certificate = scaling.bessel_x <= bracket.m_upper + 1e-8 && scaling.bessel_y <= bracket.m_upper + 1e-8;
      const bool bracket_ok = bracket.m_lower <= bracket.m_upper + 1e-8;
      const bool schauder = is_schauder_identity(pair);
      json checks{{"certificate", certificate}, {"bracket", bracket_ok}, {"schauder_input", schauder}};
      bool ok = certificate && bracket_ok;
      if (schauder) {
        const bool frames = bx.is_frame && by.is_frame;
        checks["frames"] = frames;
        ok = ok && frames;
      }
      if (!ok) ++failures;
      json rec{{"file", paths[i].string()},
               {"n", pair.size()},
               {"d", pair.dim()},
               {"phi_norm_lower", norm_lower_alternating(pair, opts.alternating).value},
               {"M_upper", bracket.m_upper},
               {"M_lower", bracket.m_lower},
               {"weights", to_json(scaling.alpha)},
               {"log_weights", to_json(bracket.weights.t())},
               {"bessel_x", scaling.bessel_x},
               {"bessel_y", scaling.bessel_y},
               {"frame_lower_x", bx.lower},
               {"frame_lower_y", by.lower},
               {"iterations", bracket.iterations},
               {"check_results", checks}};
      if (const auto grid = grid_if_small(pair, cfg.phase_steps)) {
        rec["phi_norm_oracle"] = grid->value;
        rec["ratio"] = bracket.m_upper / grid->value;
        max_ratio = std::max(max_ratio, bracket.m_upper / grid->value);
      }
      records.push_back(std::move(rec));
    }
    json report{{"command", "rescale"},
                {"records", records},
                {"summary", {{"instances", records.size()}, {"max_ratio", max_ratio}, {"failures", failures}}}};
    emit(cfg.out, report, log);
    emit_csv(cfg.out, records,
             {"file", "n", "d", "phi_norm_lower", "phi_norm_oracle", "M_upper", "M_lower", "bessel_x", "bessel_y",
              "ratio"});
    return failures == 0 ? kExitOk : kExitCheckFailed;
  });
}

namespace {

struct SuiteOutcome {
  json records = json::array();
  int failures = 0;
  double max_ratio = 0;
  std::vector<std::string> replays;
};

void fail_instance(SuiteOutcome& o, const VerifyConfig& cfg, const std::string& suite, int index,
                   const FramePair& pair) {
  ++o.failures;
  io::InstanceFile inst{pair, {cfg.seed, "verify:" + suite, "failing instance " + std::to_string(index)}};
  const std::string path = replay_path(cfg.out, suite, index);
  io::write_instance(path, inst);
  o.replays.push_back(path);
}

std::uint64_t suite_seed(const VerifyConfig& cfg, std::uint64_t salt) { return cfg.seed * 0x9E3779B97F4A7C15ULL + salt; }

FramePair random_instance(const VerifyConfig& cfg, Rng& rng) {
  std::uniform_int_distribution<long> pick_n(1, cfg.n), pick_d(1, cfg.d);
  const long n = pick_n(rng);
  const long d = pick_d(rng);
  return gen::mangle(gen::gaussian(n, d, rng), cfg.scale_lo, cfg.scale_hi, rng);
}

void suite_khintchine(const VerifyConfig& cfg, SuiteOutcome& o) {
  if (cfg.max_m < 1 || cfg.max_m > verify::kKhintchineMaxTerms) throw SizeError("khintchine: --max-m out of range");
  Rng rng(suite_seed(cfg, 1));
  for (int i = 0; i <= cfg.instances; ++i) {
    std::vector<Complex> a;
    if (i == 0) {
      a = {1.0, 1.0};  // equality case
    } else {
      const int m = 1 + (i - 1) % cfg.max_m;
      for (int k = 0; k < m; ++k) a.push_back(complex_gaussian(rng));
    }
    const auto r = verify::khintchine_check(a);
    const bool ok = i == 0 ? r.ok && std::abs(r.ratio - 1.0) <= 1e-12 : r.ok;
    json rec{{"suite", "khintchine"}, {"index", i}, {"m", a.size()}, {"lhs", r.lhs}, {"rhs", r.rhs},
             {"ratio", r.ratio}, {"ok", ok}};
    if (!ok) {
      ++o.failures;
      rec["replay"] = to_json(a);
    }
    o.records.push_back(std::move(rec));
  }
}

void suite_trace(const VerifyConfig& cfg, SuiteOutcome& o) {
  Rng rng(suite_seed(cfg, 2));
  for (int i = 0; i < cfg.instances; ++i) {
    const Eigen::Index m = 1 + i % 8;
    const CVector alpha = random_gaussian_vector(m, rng);
    const CVector beta = random_gaussian_vector(m, rng);
    const auto rank_one = verify::rank_one_trace_check(alpha, beta);
    const CMatrix a = random_gaussian_matrix(m, m, rng);
    const CMatrix b = random_gaussian_matrix(m, m, rng);
    const auto holder = verify::holder_trace_check(a, b);

    const FramePair pair = random_instance(cfg, rng);
    const Eigen::Index amp = 1 + i % 3;
    std::vector<CMatrix> blocks;
    for (Eigen::Index k = 0; k < pair.size(); ++k) blocks.push_back(random_gaussian_matrix(amp, amp, rng));
    std::vector<CVector> us, vs;
    for (Eigen::Index j = 0; j < amp; ++j) {
      us.push_back(random_gaussian_vector(pair.dim(), rng));
      vs.push_back(random_gaussian_vector(pair.dim(), rng));
    }
    const auto pairing = verify::trace_pairing_check(pair, AmplifiedInput(amp, std::move(blocks)), us, vs);
    const bool ok = rank_one.ok && holder.ok && pairing.ok;
    json rec{{"suite", "trace"},          {"index", i},
             {"rank_one_closed_form", rank_one.closed_form}, {"rank_one_svd", rank_one.svd_value},
             {"holder_slack", holder.slack}, {"pairing_residual", pairing.residual},
             {"ok", ok}};
    if (!ok) {
      rec["replay_alpha"] = to_json(std::span<const Complex>(alpha.data(), static_cast<std::size_t>(alpha.size())));
      rec["replay_beta"] = to_json(std::span<const Complex>(beta.data(), static_cast<std::size_t>(beta.size())));
      fail_instance(o, cfg, "trace", i, pair);
    }
    o.records.push_back(std::move(rec));
  }
}

void suite_chain(const VerifyConfig& cfg, SuiteOutcome& o) {
  if (cfg.n > kGridMaxTerms) throw SizeError("chain: --n exceeds the grid oracle limit");
  Rng rng(suite_seed(cfg, 3));
  for (int i = 0; i < cfg.instances; ++i) {
    const FramePair pair = random_instance(cfg, rng);
    const double phi = norm_reference(pair, cfg.phase_steps).value;
    double min_simple = std::numeric_limits<double>::infinity();
    double min_super = std::numeric_limits<double>::infinity();
    bool ok = true;
    bool chain_ok = true;
    for (int r = 0; r < cfg.draws; ++r) {
      const auto simple = verify::key_simple_check(pair, random_gaussian_vector(pair.dim(), rng),
                                                   random_gaussian_vector(pair.dim(), rng), phi);
      min_simple = std::min(min_simple, simple.slack / simple.scale);
      ok = ok && simple.ok;
      const int m = 1 + r % 4;
      std::vector<CVector> us, vs;
      for (int j = 0; j < m; ++j) {
        us.push_back(random_gaussian_vector(pair.dim(), rng));
        vs.push_back(random_gaussian_vector(pair.dim(), rng));
      }
      const auto super = verify::super_key_check(pair, us, vs, phi);
      min_super = std::min(min_super, super.slack / std::max(phi, 1e-300));
      ok = ok && super.ok;
      chain_ok = chain_ok && super.chain_ok;
    }
    json rec{{"suite", "chain"},          {"index", i},         {"n", pair.size()},
             {"d", pair.dim()},           {"phi_norm_oracle", phi}, {"min_simple_slack", min_simple},
             {"min_super_slack", min_super}, {"chain_ok", chain_ok}, {"ok", ok}};
    if (!ok) fail_instance(o, cfg, "chain", i, pair);
    o.records.push_back(std::move(rec));
  }
}

void suite_ratio(const VerifyConfig& cfg, SuiteOutcome& o) {
  verify::RatioConfig rc;
  rc.instances = cfg.instances;
  rc.n_max = cfg.n;
  rc.d_max = cfg.d;
  rc.scale_lo = cfg.scale_lo;
  rc.scale_hi = cfg.scale_hi;
  rc.seed = suite_seed(cfg, 4);
  rc.phase_steps = cfg.phase_steps;
  const auto report = verify::ratio_experiment(rc);
  o.max_ratio = std::max(o.max_ratio, report.max_ratio);
  for (const auto& r : report.records) {
    const bool ok = verify::ratio_record_ok(rc, r);
    json rec{{"suite", "ratio"},   {"index", r.index},         {"n", r.n},
             {"d", r.d},           {"M_upper", r.m_upper},       {"M_lower", r.m_lower},
             {"phi_norm_oracle", r.phi_grid}, {"phi_norm_lower", r.phi_alternating}, {"ratio", r.ratio},
             {"ok", ok}};
    if (!ok) fail_instance(o, cfg, "ratio", r.index, verify::ratio_instance(rc, r.index));
    o.records.push_back(std::move(rec));
  }
}

void suite_dilation(const VerifyConfig& cfg, SuiteOutcome& o) {
  Rng rng(suite_seed(cfg, 5));
  for (int i = 0; i < cfg.instances; ++i) {
    const FramePair pair = random_instance(cfg, rng);
    const auto r = verify::dilation_check(pair, 20, suite_seed(cfg, 500 + static_cast<std::uint64_t>(i)));
    json rec{{"suite", "dilation"},
             {"index", i},
             {"n", pair.size()},
             {"d", pair.dim()},
             {"isometry_residual_1", r.isometry_residual_1},
             {"isometry_residual_2", r.isometry_residual_2},
             {"reconstruction_residual", r.max_reconstruction},
             {"ok", r.ok}};
    if (!r.ok) fail_instance(o, cfg, "dilation", i, pair);
    o.records.push_back(std::move(rec));
  }
}

}  // namespace

int cmd_verify(const VerifyConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    if (cfg.instances < 0 || cfg.draws < 0 || cfg.n < 1 || cfg.d < 1) throw UsageError("verify: invalid sizes");
    static const std::vector<std::string> known{"khintchine", "trace", "chain", "ratio", "dilation"};
    std::vector<std::string> suites;
    if (cfg.suite == "all")
      suites = known;
    else if (std::find(known.begin(), known.end(), cfg.suite) != known.end())
      suites = {cfg.suite};
    else
      throw UsageError("verify: unknown suite '" + cfg.suite + "'");

    SuiteOutcome o;
    json per_suite = json::object();
    for (const auto& s : suites) {
      const int before = o.failures;
      if (s == "khintchine") suite_khintchine(cfg, o);
      if (s == "trace") suite_trace(cfg, o);
      if (s == "chain") suite_chain(cfg, o);
      if (s == "ratio") suite_ratio(cfg, o);
      if (s == "dilation") suite_dilation(cfg, o);
      per_suite[s] = {{"failures", o.failures - before}};
      log << s << ": " << (o.failures == before ? "pass" : "FAIL") << " (" << (o.failures - before)
          << " failures)\n";
    }
    json summary{{"suites", per_suite}, {"failures", o.failures}, {"checks", o.records.size()}};
    if (std::find(suites.begin(), suites.end(), "ratio") != suites.end()) summary["max_ratio"] = o.max_ratio;
    if (!o.replays.empty()) summary["replay_files"] = o.replays;
    json report{{"command", "verify"}, {"seed", cfg.seed}, {"records", o.records}, {"summary", summary}};
    emit(cfg.out, report, log);
    emit_csv(cfg.out, o.records, {"suite", "index", "n", "d", "ratio", "M_upper", "phi_norm_oracle", "ok"});
    return o.failures == 0 ? kExitOk : kExitCheckFailed;
  });
}

int cmd_bench(const BenchConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    if (cfg.reps < 1) throw UsageError("bench: --reps must be at least 1");
    using clock = std::chrono::steady_clock;
    json records = json::array();
    bool within = true;
    for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
      const auto [n, d] = cfg.grid[g];
      Rng rng(cfg.seed + g);
      const FramePair pair = gen::mangle(gen::gaussian(n, d, rng), 1e-3, 1e3, rng);
      const std::string text = io::serialize_instance({pair, {}});

      json ops = json::object();
      double total = 0;
      auto time = [&](const char* name, auto&& fn) {
        const auto t0 = clock::now();
        for (int r = 0; r < cfg.reps; ++r) fn();
        const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count() / cfg.reps;
        ops[name] = ms;
        total += ms;
      };
      time("frame_bounds", [&] { (void)bessel_and_frame_bounds(pair.xs()); });
      time("norm_alternating", [&] { (void)norm_lower_alternating(pair); });
      if (pair.size() <= kGridMaxTerms) time("norm_grid", [&] { (void)norm_oracle_grid(pair, cfg.phase_steps); });
      CbBracket bracket;
      time("optimize", [&] { bracket = optimize(pair); });
      time("dilation", [&] { (void)build_dilation(pair, bracket.weights, bracket.m_upper); });
      const bool ok = total <= cfg.budget_ms;
      within = within && ok;
      char checksum[17];
      std::snprintf(checksum, sizeof checksum, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
      records.push_back({{"n", n}, {"d", d}, {"checksum", checksum}, {"ops_ms", ops}, {"total_ms", total},
                         {"within_budget", ok}});
    }
    json report{{"command", "bench"},
                {"seed", cfg.seed},
                {"reps", cfg.reps},
                {"budget_ms", cfg.budget_ms},
                {"records", records},
                {"summary", {{"entries", records.size()}, {"within_budget", within}}}};
    emit(cfg.out, report, log);
    emit_csv(cfg.out, records, {"n", "d", "checksum", "total_ms", "within_budget"});
    return within ? kExitOk : kExitCheckFailed;
  });
}

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rescaling weights, multiplier norms and cb-norm certificates for finite frame pairs"};
  app.require_subcommand(1);
  const std::uint64_t seed0 = default_seed();

  GenConfig gen_cfg;
  gen_cfg.seed = seed0;
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--kind", gen_cfg.kind, "gaussian | schauder_mangled | onb_union | d1_scalars")
      ->check(CLI::IsMember({"gaussian", "schauder_mangled", "onb_union", "d1_scalars"}));
  gen->add_option("--n", gen_cfg.n, "Number of pairs");
  gen->add_option("--d", gen_cfg.d, "Dimension");
  gen->add_option("--scale-lo", gen_cfg.scale_lo, "Smallest |beta_k| of the reparameterization");
  gen->add_option("--scale-hi", gen_cfg.scale_hi, "Largest |beta_k| of the reparameterization");
  gen->add_option("--seed", gen_cfg.seed, "Random seed");
  gen->add_option("--out", gen_cfg.out, "Output instance file (stdout if omitted)");

  AnalyzeConfig an_cfg;
  auto* analyze = app.add_subcommand("analyze", "Frame bounds, pair-operator deviation and multiplier norms");
  analyze->add_option("input", an_cfg.in, "Instance file or directory")->required();
  analyze->add_option("--phase-steps", an_cfg.phase_steps, "Phase grid resolution (0 disables the grid oracle)");
  analyze->add_option("--out", an_cfg.out, "Report file (stdout if omitted)");

  RescaleConfig rs_cfg;
  rs_cfg.seed = seed0;
  auto* rescale = app.add_subcommand("rescale", "Optimize rescaling weights and certify the cb-norm bracket");
  rescale->add_option("input", rs_cfg.in, "Instance file or directory")->required();
  rescale->add_option("--max-iters", rs_cfg.max_iters, "Subgradient iterations");
  rescale->add_option("--tol", rs_cfg.tol, "Relative stall tolerance of the subgradient phase");
  rescale->add_option("--step", rs_cfg.step, "Initial step s0 of s0/sqrt(i+1)");
  rescale->add_option("--phase-steps", rs_cfg.phase_steps, "Phase grid resolution (0 disables the grid oracle)");
  rescale->add_option("--seed", rs_cfg.seed, "Seed for the lower-bound sampling");
  rescale->add_option("--out", rs_cfg.out, "Report file (stdout if omitted)");

  VerifyConfig vf_cfg;
  vf_cfg.seed = seed0;
  auto* verify = app.add_subcommand("verify", "Run verification suites; exit status 0 iff no failures");
  verify->add_option("suite", vf_cfg.suite, "khintchine | trace | chain | ratio | dilation | all")
      ->check(CLI::IsMember({"khintchine", "trace", "chain", "ratio", "dilation", "all"}));
  verify->add_option("--instances", vf_cfg.instances, "Instances per suite");
  verify->add_option("--draws", vf_cfg.draws, "Random vector draws per instance (chain suite)");
  verify->add_option("--max-m", vf_cfg.max_m, "Largest Khintchine length");
  verify->add_option("--n", vf_cfg.n, "Largest n of random instances");
  verify->add_option("--d", vf_cfg.d, "Largest d of random instances");
  verify->add_option("--scale-lo", vf_cfg.scale_lo, "Smallest |beta_k| of the mangling");
  verify->add_option("--scale-hi", vf_cfg.scale_hi, "Largest |beta_k| of the mangling");
  verify->add_option("--phase-steps", vf_cfg.phase_steps, "Phase grid resolution");
  verify->add_option("--seed", vf_cfg.seed, "Random seed");
  verify->add_option("--out", vf_cfg.out, "Report file (stdout if omitted)");

  BenchConfig bn_cfg;
  bn_cfg.seed = seed0;
  std::string grid_spec;
  auto* bench = app.add_subcommand("bench", "Time each operation class over an (n, d) grid");
  bench->add_option("--grid", grid_spec, "Comma-separated NxD entries, e.g. 3x2,5x3");
  bench->add_option("--reps", bn_cfg.reps, "Repetitions per operation");
  bench->add_option("--budget-ms", bn_cfg.budget_ms, "Per-entry time budget");
  bench->add_option("--phase-steps", bn_cfg.phase_steps, "Phase grid resolution");
  bench->add_option("--seed", bn_cfg.seed, "Random seed");
  bench->add_option("--out", bn_cfg.out, "Report file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*gen) return cmd_gen(gen_cfg, out);
  if (*analyze) return cmd_analyze(an_cfg, out);
  if (*rescale) return cmd_rescale(rs_cfg, out);
  if (*verify) return cmd_verify(vf_cfg, out);
  if (*bench) {
    try {
      bn_cfg.grid = parse_grid(grid_spec);
    } catch (const std::exception& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    }
    return cmd_bench(bn_cfg, out);
  }
  return kExitUsage;
}

}  // namespace schauder::cli
