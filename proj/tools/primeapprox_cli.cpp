// Command-line front end: every experiment behind one binary with
// reproducible, machine-readable output.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "primeapprox/bohr_gap.hpp"
#include "primeapprox/cantor_dim.hpp"
#include "primeapprox/contfrac.hpp"
#include "primeapprox/errors.hpp"
#include "primeapprox/hit_counter.hpp"
#include "primeapprox/measure_lab.hpp"
#include "primeapprox/parallel.hpp"
#include "primeapprox/prime_engine.hpp"
#include "primeapprox/sequence_gen.hpp"
#include "primeapprox/trace_avg.hpp"

namespace pa = primeapprox;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::uint64_t sieve_limit_from_env() {
  const char* env = std::getenv("PRIMEAPPROX_SIEVE_LIMIT");
  if (!env) return pa::kDefaultSieveLimit;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (!end || *end != '\0' || v < 2)
    throw std::invalid_argument("PRIMEAPPROX_SIEVE_LIMIT must be an integer >= 2");
  return v;
}

struct Output {
  std::string path;     // empty = stdout
  bool timestamp = true;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--out", path, "output file (default: stdout)");
    cmd->add_flag_callback(
        "--no-timestamp", [this] { timestamp = false; },
        "omit the timestamp field (byte-reproducible output)");
  }

  void emit_json(const std::string& command, json config, json result) const {
    json doc;
    doc["schema"] = 1;
    doc["version"] = kVersion;
    doc["command"] = command;
    if (timestamp) {
      auto now = std::chrono::system_clock::now();
      std::time_t t = std::chrono::system_clock::to_time_t(now);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
      doc["timestamp"] = buf;
    }
    doc["config"] = std::move(config);
    doc["result"] = std::move(result);
    emit_text(doc.dump(2) + "\n");
  }

  void emit_text(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open output file: " + path);
    os << text;
  }
};

json rows_json(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& v) {
  json a = json::array();
  for (const auto& [x, y] : v) a.push_back(json::array({x, y}));
  return a;
}

// Shared sequence-source flags for subcommands that consume one.
struct SeqSource {
  std::string gen = "random";
  std::string beta = "sqrt:2";
  std::uint64_t limit = 0;  // 0 = sieve limit
  std::uint64_t seed = 0;
  unsigned iterations = 5;
  std::string file;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--gen", gen,
                    "generator: random|greedy|rotation|prime-rotation")
        ->check(CLI::IsMember(
            {"random", "greedy", "rotation", "prime-rotation"}));
    cmd->add_option("--beta", beta, "rotation base (real-spec grammar)");
    cmd->add_option("--limit", limit, "largest prime (default: sieve limit)");
    cmd->add_option("--seed", seed, "PRNG seed (random generator)");
    cmd->add_option("--iterations", iterations,
                    "covering iterations (greedy generator)");
    cmd->add_option("--seq-file", file, "load a serialized sequence instead");
  }

  pa::NumeratorSequence build(const pa::PrimeTable& table) const {
    if (!file.empty()) {
      std::ifstream is(file);
      if (!is) throw std::invalid_argument("cannot open sequence file: " + file);
      return pa::read_sequence(is);
    }
    std::uint64_t lim = limit == 0 ? table.limit() : limit;
    if (gen == "random") return pa::random_sequence(table, lim, seed);
    if (gen == "greedy") return pa::greedy_sequence(table, iterations);
    if (gen == "rotation")
      return pa::rotation_sequence(table, pa::parse_real_spec(beta), lim);
    return pa::prime_rotation_sequence(table, pa::parse_real_spec(beta), lim);
  }

  json config() const {
    json c;
    c["gen"] = gen;
    c["beta"] = beta;
    c["limit"] = limit;
    c["seed"] = seed;
    c["iterations"] = iterations;
    if (!file.empty()) c["seq_file"] = file;
    return c;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"prime-denominator approximation experiments"};
  app.require_subcommand(1);

  std::uint64_t sieve_limit = sieve_limit_from_env();
  unsigned threads = pa::effective_threads(0);
  app.add_option("--threads", threads,
                 "worker thread cap (results are thread-count independent)")
      ->capture_default_str();

  // ---- greedy ---------------------------------------------------------
  auto* c_greedy = app.add_subcommand("greedy", "greedy covering sequence");
  unsigned g_iter = 5;
  std::string g_seq_out;
  bool g_entries = false;
  Output g_out;
  c_greedy->add_option("--iterations", g_iter, "covering iterations")
      ->capture_default_str();
  c_greedy->add_option("--seq-out", g_seq_out,
                       "also write the sequence in serialized form");
  c_greedy->add_flag("--entries", g_entries, "embed all (p, a_p) pairs");
  g_out.add_flags(c_greedy);

  // ---- seq ------------------------------------------------------------
  auto* c_seq = app.add_subcommand("seq", "generate and serialize a sequence");
  SeqSource seq_src;
  seq_src.add_flags(c_seq);
  Output seq_out;
  seq_out.add_flags(c_seq);

  // ---- hits -----------------------------------------------------------
  auto* c_hits = app.add_subcommand("hits", "hit counts against Psi(X)");
  SeqSource hits_src;
  hits_src.add_flags(c_hits);
  std::string hits_alpha = "rat:0", hits_c = "1/4";
  std::vector<std::uint64_t> hits_checkpoints{1000, 10000, 100000};
  Output hits_out;
  c_hits->add_option("--alpha", hits_alpha, "target real (real-spec grammar)");
  c_hits->add_option("--c", hits_c, "approximation constant as P/Q");
  c_hits->add_option("--checkpoints", hits_checkpoints,
                     "increasing X values")->delimiter(',');
  hits_out.add_flags(c_hits);

  // ---- overlap --------------------------------------------------------
  auto* c_overlap = app.add_subcommand("overlap", "exact pair overlap integral");
  std::uint64_t ov_p = 2, ov_q = 3;
  std::string ov_c = "1/4", ov_format = "text";
  Output ov_out;
  c_overlap->add_option("--p", ov_p, "first prime")->required();
  c_overlap->add_option("--q", ov_q, "second prime")->required();
  c_overlap->add_option("--c", ov_c, "approximation constant as P/Q");
  c_overlap->add_option("--format", ov_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  ov_out.add_flags(c_overlap);

  // ---- sieve-avg ------------------------------------------------------
  auto* c_sieve = app.add_subcommand("sieve-avg",
                                     "sifted-measure averages over sequences");
  std::uint64_t sa_X = 10, sa_seed = 0;
  std::vector<std::uint64_t> sa_ys{1000, 10000, 100000};
  std::string sa_c = "1/4";
  unsigned sa_trials = 200;
  Output sa_out;
  c_sieve->add_option("--X", sa_X, "lower prime cutoff");
  c_sieve->add_option("--ys", sa_ys, "upper cutoffs Y")->delimiter(',');
  c_sieve->add_option("--c", sa_c, "approximation constant as P/Q");
  c_sieve->add_option("--trials", sa_trials, "random sequences per Y");
  c_sieve->add_option("--seed", sa_seed, "PRNG seed");
  sa_out.add_flags(c_sieve);

  // ---- blocks ---------------------------------------------------------
  auto* c_blocks = app.add_subcommand("blocks", "dyadic block overlaps");
  std::string bl_beta = "golden", bl_c = "1/20";
  std::uint64_t bl_B = 1;
  int bl_U = 4, bl_V = 8;
  Output bl_out;
  c_blocks->add_option("--beta", bl_beta, "quadratic surd (real-spec grammar)");
  c_blocks->add_option("--B", bl_B, "partial-quotient bound");
  c_blocks->add_option("--c", bl_c, "approximation constant as P/Q");
  c_blocks->add_option("--U", bl_U, "first dyadic index");
  c_blocks->add_option("--V", bl_V, "last dyadic index");
  bl_out.add_flags(c_blocks);

  // ---- bohr -----------------------------------------------------------
  auto* c_bohr = app.add_subcommand("bohr", "Bohr set and its progression");
  std::string bo_beta = "sqrt:2";
  int bo_i = 2, bo_j = 3;
  std::uint64_t bo_B = 3;
  bool bo_members = false;
  Output bo_out;
  c_bohr->add_option("--beta", bo_beta, "real (real-spec grammar)");
  c_bohr->add_option("--i", bo_i, "norm exponent");
  c_bohr->add_option("--j", bo_j, "range exponent");
  c_bohr->add_option("--B", bo_B, "partial-quotient bound for the range check");
  c_bohr->add_flag("--members", bo_members, "embed the full member list");
  bo_out.add_flags(c_bohr);

  // ---- cantor ---------------------------------------------------------
  auto* c_cantor = app.add_subcommand("cantor", "Cantor schedules and bounds");
  std::string ca_schedule = "middle-third", ca_beta = "sqrt:2",
              ca_rule = "multiples", ca_c = "1/100";
  int ca_depth = 3;
  std::uint64_t ca_R = 64;
  unsigned ca_iter = 5;
  bool ca_tree = false, ca_verify = false;
  Output ca_out;
  c_cantor->add_option("--schedule", ca_schedule,
                       "middle-third|hd|greedy")
      ->check(CLI::IsMember({"middle-third", "hd", "greedy"}));
  c_cantor->add_option("--beta", ca_beta, "real for the hd schedule");
  c_cantor->add_option("--rule", ca_rule, "multiples|prime-rotation")
      ->check(CLI::IsMember({"multiples", "prime-rotation"}));
  c_cantor->add_option("--R", ca_R, "branching factor (hd schedule)");
  c_cantor->add_option("--depth", ca_depth, "construction depth");
  c_cantor->add_option("--c", ca_c, "constant for the greedy schedule");
  c_cantor->add_option("--iterations", ca_iter, "greedy iterations");
  c_cantor->add_flag("--tree", ca_tree, "embed full survivor intervals");
  c_cantor->add_flag("--verify", ca_verify,
                     "run the surviving-midpoint scan (hd schedule)");
  ca_out.add_flags(c_cantor);

  // ---- trace ----------------------------------------------------------
  auto* c_trace = app.add_subcommand("trace", "ergodic averages s_p");
  SeqSource tr_src;
  tr_src.add_flags(c_trace);
  double tr_y = 0.3, tr_x = 0.0, tr_threshold = 0.5;
  std::uint64_t tr_p = 0, tr_a = 0, tr_X = 100000;
  std::string tr_format = "json";
  Output tr_out;
  c_trace->add_option("--p", tr_p, "single evaluation: prime");
  c_trace->add_option("--a", tr_a, "single evaluation: numerator");
  c_trace->add_option("--x", tr_x, "first coordinate");
  c_trace->add_option("--y", tr_y, "second coordinate");
  c_trace->add_option("--X", tr_X, "scan prime bound");
  c_trace->add_option("--threshold", tr_threshold, "scan modulus threshold");
  c_trace->add_option("--format", tr_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  tr_out.add_flags(c_trace);

  // ---- counterexample -------------------------------------------------
  auto* c_counter = app.add_subcommand(
      "counterexample", "Liouville-type block measures");
  int ce_k = 1, ce_depth = 3;
  std::string ce_c = "1/10";
  Output ce_out;
  c_counter->add_option("--k", ce_k, "convergent index of the block");
  c_counter->add_option("--depth", ce_depth, "continued-fraction depth");
  c_counter->add_option("--c", ce_c, "approximation constant as P/Q");
  ce_out.add_flags(c_counter);

  // let global flags (--threads) appear after the subcommand name too
  for (CLI::App* sc : app.get_subcommands(nullptr)) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints usage, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage/error text
    return 2;
  }

  // --threads is an execution detail: results are thread-count independent,
  // so it is deliberately not echoed (byte-identical reruns).
  json base_config;
  base_config["sieve_limit"] = sieve_limit;

  if (*c_greedy) {
    pa::PrimeTable table(sieve_limit);
    pa::NumeratorSequence seq = pa::greedy_sequence(table, g_iter);
    if (!g_seq_out.empty()) {
      std::ofstream os(g_seq_out, std::ios::binary);
      if (!os)
        throw std::invalid_argument("cannot open file: " + g_seq_out);
      pa::write_sequence(os, seq);
    }
    json cfg = base_config;
    cfg["iterations"] = g_iter;
    json res;
    res["iterations"] = rows_json(seq.iterations);
    json bounds = json::array();
    for (const auto& [first, last] : seq.iterations) {
      bounds.push_back(first);
      bounds.push_back(last);
    }
    res["boundary_primes"] = bounds;
    res["entry_count"] = seq.entries.size();
    if (g_entries) res["entries"] = rows_json(seq.entries);
    g_out.emit_json("greedy", cfg, res);
    return 0;
  }

  if (*c_seq) {
    pa::PrimeTable table(sieve_limit);
    pa::NumeratorSequence seq = seq_src.build(table);
    std::ostringstream os;
    pa::write_sequence(os, seq);
    seq_out.emit_text(os.str());
    return 0;
  }

  if (*c_hits) {
    pa::PrimeTable table(sieve_limit);
    pa::NumeratorSequence seq = hits_src.build(table);
    pa::RealSpec alpha = pa::parse_real_spec(hits_alpha);
    pa::Rat c = pa::parse_rat(hits_c);
    pa::HitReport rep =
        pa::growth_table(alpha, seq, table, c, hits_checkpoints);
    json cfg = base_config;
    cfg["alpha"] = hits_alpha;
    cfg["c"] = pa::rat_str(c);
    cfg["checkpoints"] = hits_checkpoints;
    cfg["sequence"] = hits_src.config();
    json res;
    json rows = json::array();
    for (const auto& r : rep.rows) {
      json row;
      row["X"] = r.X;
      row["count"] = r.count;
      std::string psi_s = pa::rat_str(r.psi);
      if (psi_s.size() <= 4096)  // exact Psi has a primorial denominator
        row["psi"] = psi_s;
      row["psi_d"] = pa::rat_d(r.psi);
      row["ratio_loglog"] = r.ratio;
      rows.push_back(row);
    }
    res["rows"] = rows;
    hits_out.emit_json("hits", cfg, res);
    return 0;
  }

  if (*c_overlap) {
    pa::Rat c = pa::parse_rat(ov_c);
    pa::Rat v = pa::overlap_integral(ov_p, ov_q, c);
    if (ov_format == "text") {
      ov_out.emit_text(pa::rat_str(v) + "\n");
    } else {
      json cfg = base_config;
      cfg["p"] = ov_p;
      cfg["q"] = ov_q;
      cfg["c"] = pa::rat_str(c);
      json res;
      res["overlap"] = pa::rat_str(v);
      res["overlap_d"] = pa::rat_d(v);
      pa::Rat bound = 4 * c * c + 2 * c / static_cast<unsigned long>(ov_q);
      res["bound"] = pa::rat_str(bound);
      res["within_bound"] = v <= bound;
      ov_out.emit_json("overlap", cfg, res);
    }
    return 0;
  }

  if (*c_sieve) {
    pa::PrimeTable table(sieve_limit);
    pa::Rat c = pa::parse_rat(sa_c);
    pa::SieveAvgReport rep = pa::sieve_average_experiment(
        table, sa_X, sa_ys, c, sa_trials, sa_seed, threads);
    json cfg = base_config;
    cfg["X"] = sa_X;
    cfg["ys"] = sa_ys;
    cfg["c"] = pa::rat_str(c);
    cfg["trials"] = sa_trials;
    cfg["seed"] = sa_seed;
    json res;
    json rows = json::array();
    for (const auto& py : rep.per_y) {
      json row;
      row["Y"] = py.Y;
      row["mean"] = pa::rat_str(py.mean);
      row["mean_d"] = py.mean_d;
      row["variance"] = py.variance;
      row["H"] = pa::rat_str(py.H);
      row["product"] = py.product;
      rows.push_back(row);
    }
    res["per_y"] = rows;
    res["mean_decreasing"] = rep.mean_decreasing;
    res["product_stable_factor2"] = rep.product_stable_factor2;
    sa_out.emit_json("sieve-avg", cfg, res);
    return 0;
  }

  if (*c_blocks) {
    pa::PrimeTable table(sieve_limit);
    pa::RealSpec beta = pa::parse_real_spec(bl_beta);
    pa::Rat c = pa::parse_rat(bl_c);
    pa::DyadicBlockReport rep = pa::dyadic_block_overlap(
        table, beta, pa::Int(static_cast<unsigned long>(bl_B)), c, bl_U, bl_V);
    json cfg = base_config;
    cfg["beta"] = bl_beta;
    cfg["B"] = bl_B;
    cfg["c"] = pa::rat_str(c);
    cfg["U"] = bl_U;
    cfg["V"] = bl_V;
    json res;
    json blocks = json::array();
    for (const auto& b : rep.blocks) {
      json row;
      row["i"] = b.i;
      row["arc_count"] = b.arc_count;
      row["disjoint"] = b.disjoint;
      row["sum_identity"] = b.sum_identity;
      row["measure_d"] = b.measure_d;
      blocks.push_back(row);
    }
    res["blocks"] = blocks;
    res["total"] = rep.total;
    res["pair_total"] = rep.pair_total;
    res["qi_ratio"] = rep.qi_ratio;
    bl_out.emit_json("blocks", cfg, res);
    return 0;
  }

  if (*c_bohr) {
    pa::RealSpec beta = pa::parse_real_spec(bo_beta);
    pa::BohrSet set = pa::bohr_enumerate(beta, bo_i, bo_j);
    json cfg = base_config;
    cfg["beta"] = bo_beta;
    cfg["i"] = bo_i;
    cfg["j"] = bo_j;
    cfg["B"] = bo_B;
    json res;
    res["size"] = set.members.size();
    if (bo_members || set.members.size() <= 64) res["members"] = set.members;
    if (bo_i >= 1) {
      pa::GapSpec spec = pa::gap_params(
          beta, bo_i, bo_j, pa::Int(static_cast<unsigned long>(bo_B)));
      res["x"] = spec.x.get_str();
      res["y"] = spec.y.get_str();
      res["z"] = spec.z.get_str();
      std::size_t inside = 0;
      for (std::uint64_t n : set.members)
        if (pa::gap_contains(spec, pa::Int(static_cast<unsigned long>(n))))
          ++inside;
      res["members_in_gap"] = inside;
      res["all_members_in_gap"] = inside == set.members.size();
      pa::Int max_n = spec.z * (spec.x + spec.y);
      if (max_n.fits_ulong_p() && max_n.get_ui() <= (1u << 26)) {
        auto phi = pa::totient_sieve(std::max<std::uint64_t>(max_n.get_ui(), 1));
        pa::Rat avg = pa::gap_phi_average(spec, phi);
        res["phi_sum"] = pa::rat_str(avg);
        res["phi_sum_d"] = pa::rat_d(avg);
        res["phi_reference"] = pa::gap_phi_reference(spec);
      }
    }
    bo_out.emit_json("bohr", cfg, res);
    return 0;
  }

  if (*c_cantor) {
    json cfg = base_config;
    cfg["schedule"] = ca_schedule;
    cfg["depth"] = ca_depth;
    json res;
    auto tree_json = [&](const pa::SurvivorTree& tree) {
      json levels = json::array();
      for (const auto& lvl : tree.levels) {
        if (ca_tree) {
          json ivs = json::array();
          for (const auto& iv : lvl)
            ivs.push_back(json::array(
                {pa::rat_str(iv.lo), pa::rat_str(iv.hi)}));
          levels.push_back(ivs);
        } else {
          levels.push_back(lvl.size());
        }
      }
      return levels;
    };
    int exit_code = 0;
    if (ca_schedule == "middle-third") {
      pa::CantorSchedule sched = pa::middle_third_schedule(ca_depth);
      pa::SurvivorTree tree =
          pa::build_survivors(sched, ca_depth, pa::middle_third_rule());
      pa::DimensionBound dim = pa::dimension_lower_bound(sched);
      res["dimension_bound"] = dim.value;
      res["condition_ok"] = dim.condition_ok;
      res["first_failing_stage"] = dim.first_failing_stage;
      res[ca_tree ? "levels" : "level_counts"] = tree_json(tree);
    } else if (ca_schedule == "hd") {
      cfg["beta"] = ca_beta;
      cfg["rule"] = ca_rule;
      cfg["R"] = ca_R;
      pa::RealSpec beta = pa::parse_real_spec(ca_beta);
      pa::XSeqRule rule = ca_rule == "multiples"
                              ? pa::XSeqRule::Multiples
                              : pa::XSeqRule::PrimeRotation;
      pa::HdResult hd = pa::hd_badly_schedule(beta, rule, ca_R, ca_depth);
      res["certificate_passed"] = hd.cert.passed;
      res["budget"] = hd.cert.budget;
      json md;
      for (const auto& [stage, mx] : hd.cert.max_deletions)
        md[std::to_string(stage)] = mx;
      res["max_deletions"] = md;
      res["dimension_bound"] = hd.cert.dimension_bound;
      if (!hd.cert.passed) res["witness_stage"] = hd.cert.witness_stage;
      if (ca_verify) {
        pa::HdVerify v = pa::hd_verify_midpoints(beta, hd);
        json vj;
        vj["passed"] = v.passed;
        vj["min_product"] = v.min_product;
        if (!v.passed) {
          vj["witness_n"] = v.witness_n;
          vj["witness_mid"] = pa::rat_str(v.witness_mid);
        }
        res["verify"] = vj;
        if (!v.passed) exit_code = 3;
      }
      res[ca_tree ? "levels" : "level_counts"] = tree_json(hd.tree);
      if (!hd.cert.passed) exit_code = 3;
    } else {  // greedy
      cfg["c"] = ca_c;
      cfg["iterations"] = ca_iter;
      pa::PrimeTable table(sieve_limit);
      pa::GreedyScheduleResult gr =
          pa::greedy_schedule(table, pa::parse_rat(ca_c), ca_iter);
      json stages = json::array();
      for (const auto& st : gr.stages) {
        json row;
        row["iteration"] = st.iteration;
        row["R"] = st.R;
        row["usable"] = st.usable;
        row["p_plus"] = st.p_plus;
        row["p_minus_next"] = st.p_minus_next;
        row["max_deletions_per_parent"] = st.max_deletions_per_parent;
        row["within_budget"] = st.within_budget;
        row["diag_15cR"] = st.diag_15cR;
        stages.push_back(row);
      }
      res["stages"] = stages;
      res["certificate_passed"] = gr.passed;
      if (!gr.passed) res["witness_stage"] = gr.witness_stage;
      pa::DimensionBound dim = pa::dimension_lower_bound(gr.schedule);
      res["dimension_bound"] = dim.value;
      res["condition_ok"] = dim.condition_ok;
      res[ca_tree ? "levels" : "level_counts"] = tree_json(gr.tree);
      if (!gr.passed) exit_code = 3;
    }
    ca_out.emit_json("cantor", cfg, res);
    return exit_code;
  }

  if (*c_trace) {
    json cfg = base_config;
    if (tr_p != 0) {
      std::complex<double> d = pa::s_direct(tr_p, tr_a, tr_x, tr_y);
      std::complex<double> c = pa::s_closed(tr_p, tr_a, tr_x, tr_y);
      cfg["p"] = tr_p;
      cfg["a"] = tr_a;
      cfg["x"] = tr_x;
      cfg["y"] = tr_y;
      json res;
      res["direct"] = json::array({d.real(), d.imag()});
      res["closed"] = json::array({c.real(), c.imag()});
      res["abs"] = std::abs(c);
      tr_out.emit_json("trace", cfg, res);
      return 0;
    }
    pa::PrimeTable table(sieve_limit);
    pa::NumeratorSequence seq = tr_src.build(table);
    pa::ScanReport rep = pa::divergence_scan(seq, tr_y, tr_X, tr_threshold);
    if (tr_format == "csv") {
      std::ostringstream os;
      os << "p,theta,abs_s\n";
      for (const auto& r : rep.rows)
        os << r.p << ',' << r.theta << ',' << r.abs_s << '\n';
      tr_out.emit_text(os.str());
      return 0;
    }
    cfg["y"] = tr_y;
    cfg["X"] = tr_X;
    cfg["threshold"] = tr_threshold;
    cfg["sequence"] = tr_src.config();
    json res;
    res["kappa"] = rep.kappa;
    res["primes"] = rep.primes;
    res["kernel_primes"] = rep.kernel_primes;
    tr_out.emit_json("trace", cfg, res);
    return 0;
  }

  if (*c_counter) {
    pa::PrimeTable table(sieve_limit);
    pa::RealSpec beta = pa::parse_real_spec("liouville:" +
                                            std::to_string(ce_depth));
    pa::CounterexampleReport rep =
        pa::counterexample_block_measure(table, beta, ce_k,
                                         pa::parse_rat(ce_c));
    json cfg = base_config;
    cfg["k"] = ce_k;
    cfg["depth"] = ce_depth;
    cfg["c"] = ce_c;
    json res;
    res["q_k"] = rep.q_k.get_str();
    res["q_k1"] = rep.q_k1.get_str();
    res["truncated"] = rep.truncated;
    res["p_lo"] = rep.p_lo;
    res["p_hi"] = rep.p_hi;
    res["measure"] = pa::rat_str(rep.measure);
    res["measure_d"] = pa::rat_d(rep.measure);
    res["reference"] = rep.reference;
    res["fitted_C"] = rep.fitted_C;
    ce_out.emit_json("counterexample", cfg, res);
    return 0;
  }

  return 2;  // unreachable with require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pa::ScheduleViolation& e) {
    std::cerr << "certified failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
