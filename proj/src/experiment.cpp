#include "asep/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "asep/coupling.hpp"

namespace asep {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_i64(const std::string& s, std::int64_t& out) {
  const std::string t = trim(s);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && p == t.data() + t.size();
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  const std::string t = trim(s);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && p == t.data() + t.size();
}

bool parse_f64(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t == "inf") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && !t.empty();
}

bool parse_bool(const std::string& s, bool& out) {
  const std::string t = trim(s);
  if (t == "true" || t == "1") {
    out = true;
    return true;
  }
  if (t == "false" || t == "0") {
    out = false;
    return true;
  }
  return false;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

ParseResult parse_config(const std::string& text) {
  ExperimentConfig cfg;
  cfg.source_text = text;
  std::vector<ConfigError> errors;
  auto err = [&](int line, const std::string& m) {
    errors.push_back({line, m});
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool scenario_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      err(line_no, "expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    // Indexed tables: a[z], c[d], h[x], upper_a[z], upper_c[d], J[x].
    const auto br = key.find('[');
    if (br != std::string::npos && key.back() == ']') {
      const std::string name = key.substr(0, br);
      std::int64_t idx;
      double v;
      if (!parse_i64(key.substr(br + 1, key.size() - br - 2), idx)) {
        err(line_no, "bad index in key '" + key + "'");
        continue;
      }
      if (!parse_f64(val, v)) {
        err(line_no, "bad numeric value for '" + key + "'");
        continue;
      }
      if (name == "a")
        cfg.a[idx] = v;
      else if (name == "c")
        cfg.c[idx] = v;
      else if (name == "h")
        cfg.h[idx] = v;
      else if (name == "upper_a")
        cfg.upper_a[idx] = v;
      else if (name == "upper_c")
        cfg.upper_c[idx] = v;
      else if (name == "J")
        cfg.J[idx] = v;
      else
        err(line_no, "unknown table key '" + name + "'");
      continue;
    }

    auto set_f64 = [&](double& field, double lo, double hi,
                       const std::string& what) {
      double v;
      if (!parse_f64(val, v))
        err(line_no, "bad numeric value for '" + key + "'");
      else if (v < lo || v >= hi)
        err(line_no, what);
      else
        field = v;
    };
    auto set_u64 = [&](std::uint64_t& field) {
      std::uint64_t v;
      if (!parse_u64(val, v))
        err(line_no, "bad integer value for '" + key + "'");
      else
        field = v;
    };
    auto set_site = [&](Site& field) {
      std::int64_t v;
      if (!parse_i64(val, v))
        err(line_no, "bad integer value for '" + key + "'");
      else
        field = v;
    };

    if (key == "scenario") {
      scenario_seen = true;
      if (val == "simulate")
        cfg.scenario = Scenario::simulate;
      else if (val == "couple")
        cfg.scenario = Scenario::couple;
      else if (val == "check_rates")
        cfg.scenario = Scenario::check_rates;
      else if (val == "gibbs")
        cfg.scenario = Scenario::gibbs;
      else if (val == "measure_compare")
        cfg.scenario = Scenario::measure_compare;
      else if (val == "order_cases")
        cfg.scenario = Scenario::order_cases;
      else
        err(line_no, "unknown scenario '" + val + "'");
    } else if (key == "seed") {
      set_u64(cfg.seed);
    } else if (key == "replicas") {
      set_u64(cfg.replicas);
    } else if (key == "rate_kind") {
      if (val != "simple_ti" && val != "reversible" && val != "disordered_nn" &&
          val != "heat_bath")
        err(line_no, "unknown rate_kind '" + val + "'");
      else
        cfg.rate_kind = val;
    } else if (key == "alpha") {
      set_f64(cfg.alpha, 0.0, 1.0, "alpha must lie in [0, 1)");
    } else if (key == "upper_alpha") {
      set_f64(cfg.upper_alpha, 0.0, 1.0, "upper_alpha must lie in [0, 1)");
    } else if (key == "spec_alpha") {
      set_f64(cfg.spec_alpha, 0.0, 1.0, "spec_alpha must lie in (0, 1)");
    } else if (key == "K") {
      double v;
      if (!parse_f64(val, v) || v <= 0.0)
        err(line_no, "K must be a positive number");
      else
        cfg.K = v;
    } else if (key == "M") {
      double v;
      if (!parse_f64(val, v) || v < 0.0)
        err(line_no, "M must be a nonnegative number");
      else
        cfg.M = v;
    } else if (key == "comparison") {
      if (val != "explicit" && val != "infimum_bar" && val != "disordered")
        err(line_no, "unknown comparison '" + val + "'");
      else
        cfg.comparison = val;
    } else if (key == "upper_kind") {
      if (val != "simple_ti" && val != "reversible")
        err(line_no, "unknown upper_kind '" + val + "'");
      else
        cfg.upper_kind = val;
    } else if (key == "init") {
      if (val != "heaviside" && val != "explicit" && val != "product")
        err(line_no, "unknown init '" + val + "'");
      else
        cfg.init = val;
    } else if (key == "init_class") {
      set_site(cfg.init_class);
    } else if (key == "init_text") {
      cfg.init_text = val;
    } else if (key == "upper_init") {
      if (val != "heaviside" && val != "explicit" && val != "product")
        err(line_no, "unknown upper_init '" + val + "'");
      else
        cfg.upper_init = val;
    } else if (key == "upper_init_class") {
      set_site(cfg.upper_init_class);
    } else if (key == "upper_init_text") {
      cfg.upper_init_text = val;
    } else if (key == "cutoff") {
      set_site(cfg.cutoff);
    } else if (key == "max_events") {
      set_u64(cfg.max_events);
    } else if (key == "max_time") {
      double v;
      if (!parse_f64(val, v) || v < 0.0)
        err(line_no, "max_time must be nonnegative");
      else
        cfg.max_time = v;
    } else if (key == "window_lo") {
      set_site(cfg.window_lo);
    } else if (key == "window_hi") {
      set_site(cfg.window_hi);
    } else if (key == "batches") {
      set_u64(cfg.batches);
    } else if (key == "sampler") {
      if (val != "harris" && val != "gillespie")
        err(line_no, "unknown sampler '" + val + "'");
      else
        cfg.sampler = val;
    } else if (key == "audit_every") {
      set_u64(cfg.audit_every);
    } else if (key == "strict") {
      if (!parse_bool(val, cfg.strict)) err(line_no, "strict must be boolean");
    } else if (key == "keep_log") {
      if (!parse_bool(val, cfg.keep_log))
        err(line_no, "keep_log must be boolean");
    } else if (key == "spec_class") {
      set_site(cfg.spec_class);
    } else if (key == "potential") {
      if (val != "linear" && val != "cubic" && val != "table")
        err(line_no, "unknown potential family '" + val + "'");
      else
        cfg.potential = val;
    } else if (key == "potential_beta") {
      double v;
      if (!parse_f64(val, v))
        err(line_no, "bad numeric value for 'potential_beta'");
      else
        cfg.potential_beta = v;
    } else if (key == "tail_c") {
      double v;
      if (!parse_f64(val, v))
        err(line_no, "bad numeric value for 'tail_c'");
      else
        cfg.tail_c = v;
    } else if (key == "tail_r") {
      set_f64(cfg.tail_r, 0.0, 1.0, "tail_r must lie in [0, 1)");
    } else if (key == "coupling") {
      // base sites : strength, e.g. "0,1 : 0.2"
      const auto colon = val.find(':');
      if (colon == std::string::npos) {
        err(line_no, "coupling needs the form 'sites : strength'");
        continue;
      }
      std::vector<Site> base;
      std::istringstream bs(val.substr(0, colon));
      std::string tok;
      bool ok = true;
      while (std::getline(bs, tok, ',')) {
        std::int64_t s;
        if (!parse_i64(tok, s)) {
          ok = false;
          break;
        }
        base.push_back(s);
      }
      double strength;
      if (!ok || base.size() < 2 || !parse_f64(val.substr(colon + 1), strength))
        err(line_no, "bad coupling specification");
      else
        cfg.couplings.emplace_back(std::move(base), strength);
    } else if (key == "N") {
      std::int64_t v;
      if (!parse_i64(val, v) || v < 1)
        err(line_no, "N must be a positive integer");
      else
        cfg.N = static_cast<int>(v);
    } else if (key == "N2") {
      std::int64_t v;
      if (!parse_i64(val, v) || v < 0)
        err(line_no, "N2 must be a nonnegative integer");
      else
        cfg.N2 = static_cast<int>(v);
    } else if (key == "L") {
      std::int64_t v;
      if (!parse_i64(val, v) || v < 1)
        err(line_no, "L must be a positive integer");
      else
        cfg.L = static_cast<int>(v);
    } else if (key == "conv_tol") {
      double v;
      if (!parse_f64(val, v) || v <= 0.0)
        err(line_no, "conv_tol must be positive");
      else
        cfg.conv_tol = v;
    } else if (key == "hb_range") {
      set_site(cfg.hb_range);
    } else if (key == "trials") {
      set_u64(cfg.trials);
    } else {
      err(line_no, "unknown key '" + key + "'");
    }
  }

  if (!scenario_seen) err(0, "missing required key 'scenario'");
  if (cfg.window_hi < cfg.window_lo) err(0, "window_hi < window_lo");
  if (cfg.replicas < 1) err(0, "replicas must be >= 1");

  ParseResult result;
  result.errors = std::move(errors);
  if (result.errors.empty()) result.config = std::move(cfg);
  return result;
}

namespace {

RateFamily build_lower(const ExperimentConfig& cfg) {
  if (cfg.rate_kind == "simple_ti") return RateFamily::simple_ti(cfg.a);
  if (cfg.rate_kind == "reversible")
    return RateFamily::reversible(cfg.c, cfg.alpha);
  if (cfg.rate_kind == "disordered_nn")
    return make_disordered_pair(cfg.K, cfg.h, cfg.M).first;
  if (cfg.rate_kind == "heat_bath") {
    PotentialSpec pot;
    if (cfg.potential == "linear")
      pot.one_body = OneBodyPotential::linear(cfg.potential_beta);
    else if (cfg.potential == "cubic")
      pot.one_body = OneBodyPotential::cubic(cfg.potential_beta);
    else
      pot.one_body = OneBodyPotential::from_table(cfg.J, cfg.tail_c, cfg.tail_r);
    for (const auto& [base, strength] : cfg.couplings)
      pot.add_coupling(base, strength);
    return heat_bath_rates(pot, cfg.hb_range);
  }
  throw std::invalid_argument("unknown rate_kind");
}

RateFamily build_upper(const ExperimentConfig& cfg) {
  if (cfg.comparison == "infimum_bar")
    return build_infimum_bar(cfg.a, cfg.upper_alpha != 0.0 ? cfg.upper_alpha
                                                        : cfg.alpha)
        .first;
  if (cfg.comparison == "disordered")
    return make_disordered_pair(cfg.K, cfg.h, cfg.M).second;
  if (cfg.upper_kind == "simple_ti") return RateFamily::simple_ti(cfg.upper_a);
  return RateFamily::reversible(cfg.upper_c, cfg.upper_alpha);
}

BlockingConfig build_init(const std::string& mode, Site cls,
                          const std::string& text, const ExperimentConfig& cfg,
                          RandomStream& rng) {
  if (mode == "heaviside") return BlockingConfig::heaviside(cls);
  if (mode == "explicit") return BlockingConfig::parse(text);
  ProductBlockingSpec spec{cfg.spec_alpha != 0.0 ? cfg.spec_alpha : cfg.alpha,
                           cls};
  return sample_product_blocking(spec, cfg.cutoff, rng);
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const ExperimentConfig& cfg,
            const std::string& scenario, std::uint64_t replica)
      : out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    out_ << "# scenario=" << scenario << "\n";
    out_ << "# seed=" << cfg.seed << " replica=" << replica << "\n";
    out_ << "# config_hash=" << std::hex << fnv1a(cfg.source_text) << std::dec
         << "\n";
  }
  std::ofstream& stream() { return out_; }

 private:
  std::ofstream out_;
};

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::simulate: return "simulate";
    case Scenario::couple: return "couple";
    case Scenario::check_rates: return "check_rates";
    case Scenario::gibbs: return "gibbs";
    case Scenario::measure_compare: return "measure_compare";
    case Scenario::order_cases: return "order_cases";
  }
  return "?";
}

ExitStatus run_simulate(const ExperimentConfig& cfg,
                        const std::filesystem::path& out, std::string* console) {
  const RateFamily f = build_lower(cfg);
  for (std::uint64_t r = 0; r < cfg.replicas; ++r) {
    const std::uint64_t seed_r = RandomStream::derive(cfg.seed, r);
    RandomStream init_rng(RandomStream::derive(seed_r, 0x1717));
    SimState state(
        build_init(cfg.init, cfg.init_class, cfg.init_text, cfg, init_rng),
        seed_r);
    RunOptions opts;
    opts.window_lo = cfg.window_lo;
    opts.window_hi = cfg.window_hi;
    opts.keep_log = cfg.keep_log;
    opts.batches = cfg.batches;
    opts.sampler =
        cfg.sampler == "harris" ? Sampler::harris : Sampler::gillespie;
    const RunSummary summary =
        run(state, f, {cfg.max_events, cfg.max_time}, opts);
    CsvWriter csv(out / ("events_r" + std::to_string(r) + ".csv"), cfg,
                  "simulate", r);
    csv.stream() << "event_index,time,i,j,direction,mark,accepted,from,to\n";
    for (std::size_t k = 0; k < summary.log.size(); ++k) {
      const auto& ev = summary.log[k];
      csv.stream() << k << "," << fmt(ev.time) << "," << ev.channel.i << ","
                   << ev.channel.j << ","
                   << (ev.channel.dir == Channel::Dir::plus ? "+" : "-") << ","
                   << fmt(ev.mark) << "," << (ev.accepted ? 1 : 0) << ",";
      if (ev.accepted)
        csv.stream() << ev.from << "," << ev.to;
      else
        csv.stream() << ",";
      csv.stream() << "\n";
    }
    *console += "replica " + std::to_string(r) + ": events=" +
                std::to_string(summary.events) + " accepted=" +
                std::to_string(summary.accepted) + " elapsed=" +
                fmt(summary.elapsed) + " final=" +
                summary.final_cfg.to_string() +
                (summary.exhausted ? " (exhausted)" : "") + "\n";
  }
  return ExitStatus::ok;
}

ExitStatus run_couple(const ExperimentConfig& cfg,
                      const std::filesystem::path& out, std::string* console) {
  const RateFamily p = build_lower(cfg);
  const RateFamily p_bar = build_upper(cfg);
  bool violated = false;
  for (std::uint64_t r = 0; r < cfg.replicas; ++r) {
    const std::uint64_t seed_r = RandomStream::derive(cfg.seed, r);
    RandomStream init_rng(RandomStream::derive(seed_r, 0x1717));
    const BlockingConfig lower =
        build_init(cfg.init, cfg.init_class, cfg.init_text, cfg, init_rng);
    const BlockingConfig upper = build_init(
        cfg.upper_init, cfg.upper_init_class, cfg.upper_init_text, cfg,
        init_rng);
    CoupledOptions opts;
    opts.audit_every = cfg.audit_every;
    opts.strict = false;  // violations reported via exit status below
    opts.keep_log = cfg.keep_log;
    opts.window_lo = cfg.window_lo;
    opts.window_hi = cfg.window_hi;
    const CoupledSummary summary = run_coupled(
        lower, upper, p, p_bar, {cfg.max_events, cfg.max_time}, seed_r, opts);
    CsvWriter csv(out / ("coupled_r" + std::to_string(r) + ".csv"), cfg,
                  "couple", r);
    csv.stream() << "event_index,time,i,j,direction,mark,lower_accepted,"
                    "upper_accepted,order_ok\n";
    for (std::size_t k = 0; k < summary.log.size(); ++k) {
      const auto& ev = summary.log[k];
      csv.stream() << k << "," << fmt(ev.time) << "," << ev.channel.i << ","
                   << ev.channel.j << ","
                   << (ev.channel.dir == Channel::Dir::plus ? "+" : "-") << ","
                   << fmt(ev.mark) << "," << (ev.lower_accepted ? 1 : 0) << ","
                   << (ev.upper_accepted ? 1 : 0) << ","
                   << (ev.order_ok ? 1 : 0) << "\n";
    }
    *console += "replica " + std::to_string(r) + ": events=" +
                std::to_string(summary.events) + " violations=" +
                std::to_string(summary.violation_log.size()) + "\n";
    if (!summary.violation_log.empty()) violated = true;
  }
  return violated && cfg.strict ? ExitStatus::order_violation : ExitStatus::ok;
}

ExitStatus run_check_rates(const ExperimentConfig& cfg,
                           const std::filesystem::path& out,
                           std::string* console) {
  const RateFamily p = build_lower(cfg);
  RandomStream rng(cfg.seed);
  std::vector<BlockingConfig> probes = {BlockingConfig::heaviside(0)};
  for (int k = 0; k < 16; ++k)
    probes.push_back(random_config(0, cfg.window_lo, cfg.window_hi, 3.0, rng));
  const ValidationReport vr = validate(p, probes);
  std::ofstream report(out / "report.txt");
  report << "bounded=" << vr.bounded << " exclusion_ok=" << vr.exclusion_ok
         << "\n";
  for (const auto& f : vr.failures) report << "failure: " << f << "\n";
  for (std::size_t k = 0; k < vr.exit_rates.size(); ++k)
    report << "probe " << k << " exit_rate=" << fmt(vr.exit_rates[k]) << "\n";
  if (!cfg.comparison.empty() || !cfg.upper_a.empty() || !cfg.upper_c.empty()) {
    const RateFamily p_bar = build_upper(cfg);
    if (p.has_table() && p_bar.has_table()) {
      const auto exact = check_comparison(p, p_bar, ComparisonMode::exact_ti);
      report << "exact_ti satisfied=" << exact.satisfied
             << " checked=" << exact.checked_pairs << "\n";
      for (const auto& w : exact.witnesses)
        report << "exact witness x=" << w.x << " y=" << w.y << "\n";
    }
    const auto randomized = check_comparison(
        p, p_bar, ComparisonMode::randomized, cfg.trials, cfg.seed);
    report << "randomized satisfied=" << randomized.satisfied
           << " checked=" << randomized.checked_pairs << " (no violation found"
           << " in " << cfg.trials << " trials means not falsified)\n";
    for (const auto& w : randomized.witnesses)
      report << "randomized witness x=" << w.x << " y=" << w.y
             << " xbar=" << w.xbar << " ybar=" << w.ybar << "\n";
  }
  *console += "report written\n";
  return vr.ok() ? ExitStatus::ok : ExitStatus::validation_error;
}

ExitStatus run_gibbs(const ExperimentConfig& cfg,
                     const std::filesystem::path& out, std::string* console) {
  PotentialSpec pot;
  if (cfg.potential == "linear")
    pot.one_body = OneBodyPotential::linear(cfg.potential_beta);
  else if (cfg.potential == "cubic")
    pot.one_body = OneBodyPotential::cubic(cfg.potential_beta);
  else
    pot.one_body = OneBodyPotential::from_table(cfg.J, cfg.tail_c, cfg.tail_r);
  for (const auto& [base, strength] : cfg.couplings)
    pot.add_coupling(base, strength);

  const ConvReport conv = conv_check(pot, cfg.conv_tol);
  *console += std::string("conv_check: ") + (conv.pass ? "pass" : "fail") +
              " right_sum=" + fmt(conv.right_sum) +
              " left_sum=" + fmt(conv.left_sum) +
              (conv.reason.empty() ? "" : " (" + conv.reason + ")") + "\n";

  auto dump = [&](const GibbsTable& table) {
    CsvWriter csv(out / ("gibbs_N" + std::to_string(table.N) + ".csv"), cfg,
                  "gibbs", 0);
    csv.stream() << "pattern_bits,energy,probability\n";
    for (std::size_t pattern = 0; pattern < table.probabilities.size();
         ++pattern) {
      std::string bits(static_cast<std::size_t>(2 * table.N), '0');
      for (std::size_t b = 0; b < bits.size(); ++b)
        if ((pattern >> b) & 1u) bits[b] = '1';
      csv.stream() << bits << "," << fmt(table.energies[pattern]) << ","
                   << fmt(table.probabilities[pattern]) << "\n";
    }
  };
  const GibbsTable t1 = gibbs_table(pot, cfg.N);
  dump(t1);
  if (cfg.N2 > 0) {
    const GibbsTable t2 = gibbs_table(pot, cfg.N2);
    dump(t2);
    *console += "tv_cylinder(L=" + std::to_string(cfg.L) +
                ")=" + fmt(tv_cylinder(t1, t2, cfg.L)) + "\n";
  }
  const double residual =
      reversibility_residual(heat_bath_rates(pot, cfg.hb_range), pot, cfg.N);
  *console += "heat_bath reversibility residual=" + fmt(residual) + "\n";
  return ExitStatus::ok;
}

ExitStatus run_measure_compare(const ExperimentConfig& cfg,
                               const std::filesystem::path& out,
                               std::string* console) {
  const RateFamily f = build_lower(cfg);
  const std::size_t width =
      static_cast<std::size_t>(cfg.window_hi - cfg.window_lo + 1);
  std::vector<double> occupancy_time(width, 0.0);
  double elapsed = 0.0;
  std::vector<std::vector<double>> replica_means;
  for (std::uint64_t r = 0; r < cfg.replicas; ++r) {
    const std::uint64_t seed_r = RandomStream::derive(cfg.seed, r);
    RandomStream init_rng(RandomStream::derive(seed_r, 0x1717));
    SimState state(
        build_init(cfg.init, cfg.init_class, cfg.init_text, cfg, init_rng),
        seed_r);
    RunOptions opts;
    opts.window_lo = cfg.window_lo;
    opts.window_hi = cfg.window_hi;
    opts.keep_log = false;
    opts.batches = cfg.batches;
    opts.sampler =
        cfg.sampler == "harris" ? Sampler::harris : Sampler::gillespie;
    const RunSummary summary =
        run(state, f, {cfg.max_events, cfg.max_time}, opts);
    if (!(summary.elapsed > 0.0))
      throw std::invalid_argument("replica produced no elapsed time");
    elapsed += summary.elapsed;
    for (std::size_t k = 0; k < width; ++k)
      occupancy_time[k] += summary.occupancy_time[k];
    for (std::size_t b = 0; b < summary.batch_time.size(); ++b) {
      if (summary.batch_time[b] <= 0.0) continue;
      std::vector<double> m(width);
      for (std::size_t k = 0; k < width; ++k)
        m[k] = summary.batch_occupancy[b][k] / summary.batch_time[b];
      replica_means.push_back(std::move(m));
    }
  }
  DensityEstimate est;
  est.window_lo = cfg.window_lo;
  est.total_time = elapsed;
  est.batches = replica_means.size();
  est.time_average.resize(width);
  est.sigma.assign(width, 0.0);
  for (std::size_t k = 0; k < width; ++k)
    est.time_average[k] = occupancy_time[k] / elapsed;
  if (replica_means.size() >= 2) {
    for (std::size_t k = 0; k < width; ++k) {
      double mean = 0.0;
      for (const auto& m : replica_means) mean += m[k];
      mean /= static_cast<double>(replica_means.size());
      double var = 0.0;
      for (const auto& m : replica_means)
        var += (m[k] - mean) * (m[k] - mean);
      var /= static_cast<double>(replica_means.size() - 1);
      est.sigma[k] = std::sqrt(var / static_cast<double>(replica_means.size()));
    }
  }
  ProductBlockingSpec spec{cfg.spec_alpha != 0.0 ? cfg.spec_alpha : cfg.alpha,
                           cfg.spec_class};
  const DeviationReport report = compare_to_product(est, spec);
  CsvWriter csv(out / "density.csv", cfg, "measure_compare", 0);
  csv.stream() << "site,empirical,exact,abs_error,sigma\n";
  for (std::size_t k = 0; k < width; ++k) {
    csv.stream() << (cfg.window_lo + static_cast<Site>(k)) << ","
                 << fmt(report.empirical[k]) << "," << fmt(report.exact[k])
                 << "," << fmt(report.abs_error[k]) << ","
                 << fmt(report.sigma[k]) << "\n";
  }
  *console += "max_abs_error=" + fmt(report.max_abs_error) + "\n";
  return ExitStatus::ok;
}

ExitStatus run_order_cases(const ExperimentConfig& cfg,
                           const std::filesystem::path& out,
                           std::string* console) {
  const OrderCaseReport report =
      verify_order_cases(cfg.trials, cfg.window_lo, cfg.window_hi, cfg.seed);
  std::ofstream txt(out / "report.txt");
  txt << "pairs=" << report.pairs << "\n";
  for (int c = 0; c < 5; ++c)
    txt << "case" << c << " checks=" << report.checks[c] << "\n";
  txt << "counterexamples=" << report.counterexamples.size() << "\n";
  for (const auto& cx : report.counterexamples)
    txt << "case" << cx.case_id << " i=" << cx.i << " j=" << cx.j
        << " lower=" << cx.lower << " upper=" << cx.upper << "\n";
  *console += "counterexamples=" + std::to_string(report.counterexamples.size()) +
              "\n";
  return report.ok() || !cfg.strict ? ExitStatus::ok
                                    : ExitStatus::order_violation;
}

}  // namespace

ExitStatus run_experiment(const ExperimentConfig& cfg,
                          const std::string& out_dir, std::string* console) {
  std::string sink;
  if (!console) console = &sink;
  try {
    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);
    switch (cfg.scenario) {
      case Scenario::simulate:
        return run_simulate(cfg, out, console);
      case Scenario::couple:
        return run_couple(cfg, out, console);
      case Scenario::check_rates:
        return run_check_rates(cfg, out, console);
      case Scenario::gibbs:
        return run_gibbs(cfg, out, console);
      case Scenario::measure_compare:
        return run_measure_compare(cfg, out, console);
      case Scenario::order_cases:
        return run_order_cases(cfg, out, console);
    }
  } catch (const EnumerationCapError& e) {
    *console += std::string("error: ") + e.what() + "\n";
    return ExitStatus::enumeration_cap;
  } catch (const OrderViolation& e) {
    *console += std::string("error: ") + e.what() + "\n";
    return ExitStatus::order_violation;
  } catch (const std::invalid_argument& e) {
    *console += std::string("error: ") + e.what() + "\n";
    return ExitStatus::validation_error;
  } catch (const std::runtime_error& e) {
    *console += std::string("error: ") + e.what() + "\n";
    return ExitStatus::horizon_failure;
  }
  return ExitStatus::validation_error;
}

}  // namespace asep
