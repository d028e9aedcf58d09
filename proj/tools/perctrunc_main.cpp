#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "perctrunc/aniso.hpp"
#include "perctrunc/errors.hpp"
#include "perctrunc/oriented.hpp"
#include "perctrunc/renorm.hpp"
#include "perctrunc/report.hpp"
#include "perctrunc/sequence.hpp"
#include "perctrunc/sitesim.hpp"

using nlohmann::json;
using namespace perctrunc;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitUnsatisfiable = 3;
constexpr int kExitIo = 4;

struct Output {
  std::string path;  // empty = stdout
  void deliver(const json& record) const {
    if (path.empty()) {
      std::cout << record.dump(2) << "\n";
    } else {
      write_json_file(path, record);
      std::cout << "wrote " << path << "\n";
    }
  }
};

json versions_json() {
  return json{{"generator_version", kGeneratorVersion},
              {"encoding_version", kEdgeEncodingName}};
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError("bad numeric value in list: " + item);
    }
  }
  return out;
}

struct ExploreAggregate {
  uint64_t runs = 0;
  uint64_t footprint_edges = 0;
  uint64_t footprint_violations = 0;
  uint64_t bfs_checks = 0;
  uint64_t bfs_failures = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"perctrunc: Monte Carlo toolkit for truncated long-range percolation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "options file mirroring the CLI flags (flags win)");

  std::function<void()> action;

  // ---------------------------------------------------------------- analyze
  {
    auto* cmd = app.add_subcommand("analyze", "sequence summability and support diagnostics");
    auto seq_spec = std::make_shared<std::string>();
    auto horizon = std::make_shared<int64_t>(1000000);
    auto cross = std::make_shared<int64_t>(0);
    auto out = std::make_shared<Output>();
    cmd->add_option("--seq", *seq_spec, "sequence spec")->required();
    cmd->add_option("--horizon", *horizon, "scan/sum horizon");
    cmd->add_option("--cross", *cross, "also report the cross sum with this shift N");
    cmd->add_option("--out", out->path, "write the JSON record here");
    cmd->callback([=, &action] {
      action = [=] {
        const auto seq = parse_sequence_spec(*seq_spec);
        json result;
        const auto smin = support_min(seq, *horizon);
        const auto sgcd = support_gcd(seq, *horizon);
        result["support_min"] = smin ? json(*smin) : json();
        result["support_gcd"] = sgcd ? json(*sgcd) : json();
        result["sum_plain"] = partial_sum(seq, SumMode::Plain, *horizon);
        result["sum_squares"] = partial_sum(seq, SumMode::Squares, *horizon);
        if (*cross >= 1) {
          result["sum_cross"] = partial_sum(seq, SumMode::Cross, *horizon, *cross);
          result["cross_shift"] = *cross;
        }
        json config{{"command", "analyze"}, {"seq", seq.spec_string()}, {"horizon", *horizon}};
        out->deliver(make_record(config, result));
      };
    });
  }

  // ------------------------------------------------------- simulate oriented
  {
    auto* sim = app.add_subcommand("simulate", "Monte Carlo survival estimates");
    sim->require_subcommand(1);
    auto* cmd = sim->add_subcommand("oriented", "oriented reach-level-H survival under P^K");
    auto seq_spec = std::make_shared<std::string>();
    auto K = std::make_shared<int64_t>(0);
    auto H = std::make_shared<int64_t>(0);
    auto d = std::make_shared<int>(1);
    auto trials = std::make_shared<uint64_t>(1000);
    auto seed = std::make_shared<uint64_t>(1);
    auto out = std::make_shared<Output>();
    cmd->add_option("--seq", *seq_spec, "sequence spec")->required();
    cmd->add_option("--K", *K, "truncation range")->required();
    cmd->add_option("--height", *H, "survival proxy level H")->required();
    cmd->add_option("--d", *d, "spatial dimension");
    cmd->add_option("--trials", *trials, "trial count");
    cmd->add_option("--seed", *seed, "master seed");
    cmd->add_option("--out", out->path, "write the JSON record here");
    cmd->callback([=, &action] {
      action = [=] {
        const auto seq = parse_sequence_spec(*seq_spec);
        const auto est = estimate_survival(seq, *K, *H, *d, *trials, *seed);
        json result{{"model", "oriented"},
                    {"seq", seq.spec_string()},
                    {"K", *K},
                    {"H", *H},
                    {"d", *d},
                    {"trials", est.trials},
                    {"successes", est.successes},
                    {"estimate", est.estimate},
                    {"ci", {est.ci_lo, est.ci_hi}},
                    {"seed", est.seed}};
        result.update(versions_json());
        json config{{"command", "simulate oriented"},
                    {"seq", seq.spec_string()},
                    {"K", *K},
                    {"H", *H},
                    {"d", *d},
                    {"trials", *trials},
                    {"seed", *seed}};
        out->deliver(make_record(config, result, est.wall_ms));
      };
    });
  }

  // ------------------------------------------------------------ block-params
  {
    auto* cmd = app.add_subcommand("block-params", "minimal block construction parameters");
    auto seq_spec = std::make_shared<std::string>();
    auto epsilon = std::make_shared<double>(0.0);
    auto horizon = std::make_shared<int64_t>(1000000);
    auto out = std::make_shared<Output>();
    cmd->add_option("--seq", *seq_spec, "sequence spec")->required();
    cmd->add_option("--epsilon", *epsilon, "target block-event failure bound")->required();
    cmd->add_option("--horizon", *horizon, "search horizon");
    cmd->add_option("--out", out->path, "write the JSON record here");
    cmd->callback([=, &action] {
      action = [=] {
        const auto seq = parse_sequence_spec(*seq_spec);
        const auto bp = choose_block_params(seq, *epsilon, *horizon);
        const double ps = prob_S_exact(seq, bp.k, bp.K);
        const double pt = prob_T_exact(seq, bp);
        std::printf("k=%lld M=%lld K=%lld prob_S=%.10f prob_T=%.10f\n",
                    static_cast<long long>(bp.k), static_cast<long long>(bp.M),
                    static_cast<long long>(bp.K), ps, pt);
        json result{{"k", bp.k},    {"M", bp.M},    {"K", bp.K},
                    {"prob_S", ps}, {"prob_T", pt}, {"epsilon", bp.epsilon}};
        json config{{"command", "block-params"},
                    {"seq", seq.spec_string()},
                    {"epsilon", *epsilon},
                    {"horizon", *horizon}};
        out->deliver(make_record(config, result));
      };
    });
  }

  // ----------------------------------------------------------------- explore
  {
    auto* cmd = app.add_subcommand("explore", "renormalized exploration survival");
    auto seq_spec = std::make_shared<std::string>();
    auto epsilon = std::make_shared<double>(0.0);
    auto steps = std::make_shared<uint64_t>(100);
    auto trials = std::make_shared<uint64_t>(100);
    auto seed = std::make_shared<uint64_t>(1);
    auto horizon = std::make_shared<int64_t>(1000000);
    auto verify = std::make_shared<bool>(false);
    auto out = std::make_shared<Output>();
    cmd->add_option("--seq", *seq_spec, "sequence spec")->required();
    cmd->add_option("--epsilon", *epsilon, "block-event failure bound")->required();
    cmd->add_option("--steps", *steps, "max exploration steps per run");
    cmd->add_option("--trials", *trials, "number of runs");
    cmd->add_option("--seed", *seed, "master seed");
    cmd->add_option("--horizon", *horizon, "parameter search horizon");
    cmd->add_flag("--verify", *verify, "re-check footprints and reachability per run");
    cmd->add_option("--out", out->path, "write the JSON record here");
    cmd->callback([=, &action] {
      action = [=] {
        const auto seq = parse_sequence_spec(*seq_spec);
        json result{{"model", "renorm-explore"},
                    {"seq", seq.spec_string()},
                    {"epsilon", *epsilon},
                    {"steps", *steps}};
        if (*verify) {
          const auto bp = choose_block_params(seq, *epsilon, *horizon);
          ExploreAggregate agg;
          uint64_t alive = 0;
          for (uint64_t t = 0; t < *trials; ++t) {
            const ConfigSeed cfg{*seed, t};
            const auto st = explore(cfg, seq, bp, *steps);
            if (st.frontier_alive) ++alive;
            const auto rep = verify_coupling(st, cfg, seq, bp);
            ++agg.runs;
            agg.footprint_edges += rep.footprint_edges;
            agg.footprint_violations += rep.footprint_violations;
            agg.bfs_checks += rep.bfs_checks;
            agg.bfs_failures += rep.bfs_failures;
          }
          const auto est = make_estimate(alive, *trials, *seed);
          result["params"] = {{"k", bp.k}, {"M", bp.M}, {"K", bp.K}};
          result["event_probability"] = prob_T_exact(seq, bp);
          result["trials"] = est.trials;
          result["successes"] = est.successes;
          result["estimate"] = est.estimate;
          result["ci"] = {est.ci_lo, est.ci_hi};
          result["seed"] = est.seed;
          result["verification"] = {{"runs", agg.runs},
                                    {"footprint_edges", agg.footprint_edges},
                                    {"footprint_violations", agg.footprint_violations},
                                    {"bfs_checks", agg.bfs_checks},
                                    {"bfs_failures", agg.bfs_failures}};
        } else {
          const auto sur =
              estimate_exploration_survival(seq, *epsilon, *trials, *steps, *seed, *horizon);
          result["params"] = {{"k", sur.bp.k}, {"M", sur.bp.M}, {"K", sur.bp.K}};
          result["event_probability"] = sur.event_probability;
          result["trials"] = sur.est.trials;
          result["successes"] = sur.est.successes;
          result["estimate"] = sur.est.estimate;
          result["ci"] = {sur.est.ci_lo, sur.est.ci_hi};
          result["seed"] = sur.est.seed;
        }
        result["threshold_ref"] = kOrientedSiteThresholdRef;
        result.update(versions_json());
        json config{{"command", "explore"}, {"seq", seq.spec_string()},
                    {"epsilon", *epsilon},  {"steps", *steps},
                    {"trials", *trials},    {"seed", *seed},
                    {"verify", *verify}};
        out->deliver(make_record(config, result));
      };
    });
  }

  // -------------------------------------------------------------- aniso ...
  {
    auto* an = app.add_subcommand("aniso", "anisotropic long-range lattice couplings");
    an->require_subcommand(1);

    auto* t2 = an->add_subcommand("thm2", "shift-coupling box verification");
    {
      auto seq_spec = std::make_shared<std::string>();
      auto delta = std::make_shared<double>(0.5);
      auto N = std::make_shared<int64_t>(1);
      auto epsilon = std::make_shared<double>(0.3);
      auto box = std::make_shared<int64_t>(6);
      auto trials = std::make_shared<uint64_t>(100);
      auto seed = std::make_shared<uint64_t>(1);
      auto horizon = std::make_shared<int64_t>(1000000);
      auto out = std::make_shared<Output>();
      t2->add_option("--seq", *seq_spec, "sequence spec")->required();
      t2->add_option("--delta", *delta, "vertical bond probability");
      t2->add_option("--N", *N, "shift")->required();
      t2->add_option("--epsilon", *epsilon, "target failure bound");
      t2->add_option("--box", *box, "box side (renormalized sites)");
      t2->add_option("--trials", *trials, "number of boxed runs");
      t2->add_option("--seed", *seed, "master seed");
      t2->add_option("--horizon", *horizon, "parameter search horizon");
      t2->add_option("--out", out->path, "write the JSON record here");
      t2->callback([=, &action] {
        action = [=] {
          const auto seq = parse_sequence_spec(*seq_spec);
          const auto tp = choose_thm2_params(seq, *N, *epsilon, *horizon);
          AnisoParams aniso{*delta, seq, tp.K};
          uint64_t red[2] = {0, 0}, tot[2] = {0, 0}, vred = 0, vtot = 0;
          uint64_t fp_edges = 0, fp_viol = 0, checks = 0, fails = 0, bonds = 0;
          for (uint64_t t = 0; t < *trials; ++t) {
            const auto rep = verify_thm2_coupling(ConfigSeed{*seed, t}, aniso, tp, *box);
            bonds += rep.bonds;
            fp_edges += rep.footprint_edges;
            fp_viol += rep.footprint_violations;
            checks += rep.path_checks;
            fails += rep.path_failures;
            for (int c : {0, 1}) {
              red[c] += rep.h_red[c];
              tot[c] += rep.h_total[c];
            }
            vred += rep.v_red;
            vtot += rep.v_total;
          }
          json result{{"model", "aniso-thm2"},
                      {"seq", seq.spec_string()},
                      {"params", {{"N", tp.N}, {"M1", tp.M1}, {"M2", tp.M2}, {"K", tp.K}}},
                      {"delta", *delta},
                      {"box", *box},
                      {"trials", *trials},
                      {"bonds", bonds},
                      {"seed", *seed},
                      {"exact",
                       {{"h_minus", exact_H(seq, tp, -1)},
                        {"h_plus", exact_H(seq, tp, +1)},
                        {"vertical", *delta}}},
                      {"observed",
                       {{"h_minus_red", red[0]},
                        {"h_minus_total", tot[0]},
                        {"h_plus_red", red[1]},
                        {"h_plus_total", tot[1]},
                        {"vertical_red", vred},
                        {"vertical_total", vtot}}},
                      {"footprint_edges", fp_edges},
                      {"footprint_violations", fp_viol},
                      {"path_checks", checks},
                      {"path_failures", fails}};
          result.update(versions_json());
          json config{{"command", "aniso thm2"}, {"seq", seq.spec_string()},
                      {"delta", *delta},         {"N", *N},
                      {"epsilon", *epsilon},     {"box", *box},
                      {"trials", *trials},       {"seed", *seed}};
          out->deliver(make_record(config, result));
        };
      });
    }

    auto* t3 = an->add_subcommand("thm3", "window/ladder red-site coupling");
    {
      auto seq_spec = std::make_shared<std::string>();
      auto delta = std::make_shared<double>(0.5);
      auto eta = std::make_shared<double>(0.0);
      auto epsilon = std::make_shared<double>(0.3);
      auto height = std::make_shared<int64_t>(5);
      auto window = std::make_shared<int64_t>(0);
      auto trials = std::make_shared<uint64_t>(100);
      auto seed = std::make_shared<uint64_t>(1);
      auto horizon = std::make_shared<int64_t>(1000000);
      auto out = std::make_shared<Output>();
      t3->add_option("--seq", *seq_spec, "sequence spec")->required();
      t3->add_option("--delta", *delta, "vertical bond probability");
      t3->add_option("--eta", *eta, "cross-sum level (limsup/2 surrogate)")->required();
      t3->add_option("--epsilon", *epsilon, "target failure bound");
      t3->add_option("--height", *height, "red-path target generation");
      t3->add_option("--window", *window, "window W (> 2*ell); 0 picks 4*ell+1");
      t3->add_option("--trials", *trials, "number of runs");
      t3->add_option("--seed", *seed, "master seed");
      t3->add_option("--horizon", *horizon, "parameter search horizon");
      t3->add_option("--out", out->path, "write the JSON record here");
      t3->callback([=, &action] {
        action = [=] {
          const auto seq = parse_sequence_spec(*seq_spec);
          int64_t W = *window;
          if (W == 0) W = 4 * thm3_min_ell(*delta, *eta, *epsilon) + 1;
          const auto tp = choose_thm3_params(seq, *delta, *epsilon, *eta, W, *horizon);
          AnisoParams aniso{*delta, seq, tp.K};
          uint64_t reached = 0, fp_edges = 0, fp_viol = 0, links = 0, link_fails = 0;
          for (uint64_t t = 0; t < *trials; ++t) {
            const auto rep = red_site_explore(ConfigSeed{*seed, t}, aniso, tp, *height, true);
            if (rep.reached) ++reached;
            fp_edges += rep.footprint_edges;
            fp_viol += rep.footprint_violations;
            links += rep.link_checks;
            link_fails += rep.link_failures;
          }
          const auto est = make_estimate(reached, *trials, *seed);
          json result{{"model", "aniso-thm3"},
                      {"seq", seq.spec_string()},
                      {"params",
                       {{"eta", tp.eta},
                        {"ell", tp.ell},
                        {"W", tp.W},
                        {"k", tp.k},
                        {"M", tp.M},
                        {"K", tp.K}}},
                      {"delta", *delta},
                      {"height", *height},
                      {"trials", est.trials},
                      {"successes", est.successes},
                      {"estimate", est.estimate},
                      {"ci", {est.ci_lo, est.ci_hi}},
                      {"seed", est.seed},
                      {"exact_R", exact_R3(seq, *delta, tp)},
                      {"t_lower_bound", t3_lower_bound(tp)},
                      {"footprint_edges", fp_edges},
                      {"footprint_violations", fp_viol},
                      {"link_checks", links},
                      {"link_failures", link_fails}};
          result.update(versions_json());
          json config{{"command", "aniso thm3"}, {"seq", seq.spec_string()},
                      {"delta", *delta},         {"eta", *eta},
                      {"epsilon", *epsilon},     {"height", *height},
                      {"window", W},             {"trials", *trials},
                      {"seed", *seed}};
          out->deliver(make_record(config, result));
        };
      });
    }
  }

  // --------------------------------------------------------------------- kw
  {
    auto* cmd = app.add_subcommand("kw", "long-range line connectivity probability");
    auto seq_spec = std::make_shared<std::string>();
    auto l = std::make_shared<int64_t>(0);
    auto L = std::make_shared<int64_t>(0);
    auto trials = std::make_shared<uint64_t>(1000);
    auto seed = std::make_shared<uint64_t>(1);
    auto out = std::make_shared<Output>();
    cmd->add_option("--seq", *seq_spec, "sequence spec")->required();
    cmd->add_option("--l", *l, "markers 0..l")->required();
    cmd->add_option("--L", *L, "window 0..L")->required();
    cmd->add_option("--trials", *trials, "trial count");
    cmd->add_option("--seed", *seed, "master seed");
    cmd->add_option("--out", out->path, "write the JSON record here");
    cmd->callback([=, &action] {
      action = [=] {
        const auto seq = parse_sequence_spec(*seq_spec);
        const auto est = kw_connect_prob(seq, *l, *L, *trials, *seed);
        json result{{"model", "kw-line"}, {"seq", seq.spec_string()}, {"l", *l}, {"L", *L}};
        result.update(estimate_to_json(est));
        result.update(versions_json());
        json config{{"command", "kw"}, {"seq", seq.spec_string()}, {"l", *l}, {"L", *L},
                    {"trials", *trials}, {"seed", *seed}};
        out->deliver(make_record(config, result, est.wall_ms));
      };
    });
  }

  // ----------------------------------------------------------------- kesten
  {
    auto* cmd = app.add_subcommand("kesten", "anisotropic nearest-neighbor box crossing");
    auto pv = std::make_shared<double>(0.5);
    auto ph = std::make_shared<double>(0.5);
    auto n = std::make_shared<int64_t>(32);
    auto trials = std::make_shared<uint64_t>(1000);
    auto seed = std::make_shared<uint64_t>(1);
    auto out = std::make_shared<Output>();
    cmd->add_option("--pv", *pv, "vertical bond probability")->required();
    cmd->add_option("--ph", *ph, "horizontal bond probability")->required();
    cmd->add_option("--n", *n, "box side")->required();
    cmd->add_option("--trials", *trials, "trial count");
    cmd->add_option("--seed", *seed, "master seed");
    cmd->add_option("--out", out->path, "write the JSON record here");
    cmd->callback([=, &action] {
      action = [=] {
        const auto est = kesten_crossing(*pv, *ph, *n, *trials, *seed);
        json result{{"model", "kesten-crossing"}, {"pv", *pv}, {"ph", *ph}, {"n", *n}};
        result.update(estimate_to_json(est));
        result.update(versions_json());
        json config{{"command", "kesten"}, {"pv", *pv}, {"ph", *ph}, {"n", *n},
                    {"trials", *trials},   {"seed", *seed}};
        out->deliver(make_record(config, result, est.wall_ms));
      };
    });
  }

  // ---------------------------------------------------------- oriented-site
  {
    auto* cmd =
        app.add_subcommand("oriented-site", "plain Bernoulli site exploration on the wedge");
    auto gamma = std::make_shared<double>(0.7);
    auto steps = std::make_shared<uint64_t>(1000);
    auto trials = std::make_shared<uint64_t>(500);
    auto seed = std::make_shared<uint64_t>(1);
    auto out = std::make_shared<Output>();
    cmd->add_option("--gamma", *gamma, "per-site probability")->required();
    cmd->add_option("--steps", *steps, "max exploration steps");
    cmd->add_option("--trials", *trials, "trial count");
    cmd->add_option("--seed", *seed, "master seed");
    cmd->add_option("--out", out->path, "write the JSON record here");
    cmd->callback([=, &action] {
      action = [=] {
        const auto est = estimate_site_survival(*gamma, *steps, *trials, *seed);
        json result{{"model", "oriented-site"},
                    {"gamma", *gamma},
                    {"steps", *steps},
                    {"threshold_ref", kOrientedSiteThresholdRef}};
        result.update(estimate_to_json(est));
        result.update(versions_json());
        json config{{"command", "oriented-site"}, {"gamma", *gamma}, {"steps", *steps},
                    {"trials", *trials},          {"seed", *seed}};
        out->deliver(make_record(config, result, est.wall_ms));
      };
    });
  }

  {
    auto* cmd = app.add_subcommand(
        "oriented-site-threshold",
        "empirical threshold scan for the wedge site process (reference only)");
    auto lo = std::make_shared<double>(0.60);
    auto hi = std::make_shared<double>(0.80);
    auto points = std::make_shared<int>(11);
    auto steps = std::make_shared<uint64_t>(1000);
    auto trials = std::make_shared<uint64_t>(1000);
    auto seed = std::make_shared<uint64_t>(1);
    auto out = std::make_shared<Output>();
    cmd->add_option("--lo", *lo, "scan start");
    cmd->add_option("--hi", *hi, "scan end");
    cmd->add_option("--points", *points, "scan points");
    cmd->add_option("--steps", *steps, "max exploration steps");
    cmd->add_option("--trials", *trials, "trials per point");
    cmd->add_option("--seed", *seed, "master seed");
    cmd->add_option("--out", out->path, "write the JSON record here");
    cmd->callback([=, &action] {
      action = [=] {
        const auto scan = scan_site_threshold(*lo, *hi, *points, *steps, *trials, *seed);
        json rows = json::array();
        for (const auto& r : scan.rows) {
          json row{{"gamma", r.gamma}};
          row.update(estimate_to_json(r.est));
          rows.push_back(row);
        }
        json result{{"model", "oriented-site-threshold"},
                    {"rows", rows},
                    {"crossing_estimate", scan.crossing_estimate},
                    {"reference", kOrientedSiteThresholdRef},
                    {"note", "empirical desk-scale estimate; never used in assertions"}};
        result.update(versions_json());
        json config{{"command", "oriented-site-threshold"}, {"lo", *lo},       {"hi", *hi},
                    {"points", *points},                    {"steps", *steps},
                    {"trials", *trials},                    {"seed", *seed}};
        out->deliver(make_record(config, result));
      };
    });
  }

  // ------------------------------------------------------------------ sweep
  {
    auto* cmd = app.add_subcommand("sweep", "one estimate per axis value, shared master seed");
    auto op = std::make_shared<std::string>();
    auto axis = std::make_shared<std::string>();
    auto values_csv = std::make_shared<std::string>();
    auto seq_spec = std::make_shared<std::string>("invsqrt");
    auto K = std::make_shared<int64_t>(8);
    auto H = std::make_shared<int64_t>(50);
    auto d = std::make_shared<int>(1);
    auto l = std::make_shared<int64_t>(5);
    auto pv = std::make_shared<double>(0.3);
    auto n = std::make_shared<int64_t>(32);
    auto trials = std::make_shared<uint64_t>(1000);
    auto seed = std::make_shared<uint64_t>(1);
    auto csv = std::make_shared<std::string>();
    auto svg = std::make_shared<std::string>();
    auto out = std::make_shared<Output>();
    cmd->add_option("--op", *op, "oriented | kw | kesten")->required();
    cmd->add_option("--axis", *axis, "K | H | L | ph")->required();
    cmd->add_option("--values", *values_csv, "comma-separated axis values")->required();
    cmd->add_option("--seq", *seq_spec, "sequence spec (oriented, kw)");
    cmd->add_option("--K", *K, "truncation (oriented, fixed when axis=H)");
    cmd->add_option("--height", *H, "level H (oriented, fixed when axis=K)");
    cmd->add_option("--d", *d, "dimension (oriented)");
    cmd->add_option("--l", *l, "markers (kw)");
    cmd->add_option("--pv", *pv, "vertical probability (kesten)");
    cmd->add_option("--n", *n, "box side (kesten)");
    cmd->add_option("--trials", *trials, "trials per axis value");
    cmd->add_option("--seed", *seed, "shared master seed");
    cmd->add_option("--csv", *csv, "write sweep rows here");
    cmd->add_option("--svg", *svg, "also render an SVG chart");
    cmd->add_option("--out", out->path, "write the JSON record here");
    cmd->callback([=, &action] {
      action = [=] {
        const auto values = parse_values(*values_csv);
        validate_axis(*axis, values);
        std::vector<SweepRow> rows;
        for (const double v : values) {
          EstimateResult est;
          if (*op == "oriented") {
            const auto seq = parse_sequence_spec(*seq_spec);
            int64_t kk = *K, hh = *H;
            if (*axis == "K") kk = static_cast<int64_t>(v);
            else if (*axis == "H") hh = static_cast<int64_t>(v);
            else throw ValidationError("oriented sweeps take axis K or H");
            est = estimate_survival(seq, kk, hh, *d, *trials, *seed);
          } else if (*op == "kw") {
            if (*axis != "L") throw ValidationError("kw sweeps take axis L");
            est = kw_connect_prob(parse_sequence_spec(*seq_spec), *l, static_cast<int64_t>(v),
                                  *trials, *seed);
          } else if (*op == "kesten") {
            if (*axis != "ph") throw ValidationError("kesten sweeps take axis ph");
            est = kesten_crossing(*pv, v, *n, *trials, *seed);
          } else {
            throw ValidationError("unknown sweep op: " + *op);
          }
          rows.push_back(SweepRow{v, est});
        }
        if (!csv->empty()) write_sweep_csv(*csv, *axis, rows);
        if (!svg->empty()) {
          if (csv->empty()) throw ValidationError("--svg needs --csv");
          emit_plot(*csv, *svg);
        }
        json jrows = json::array();
        for (const auto& r : rows) {
          json row{{"axis_value", r.axis_value}};
          row.update(estimate_to_json(r.est));
          jrows.push_back(row);
        }
        json result{{"model", "sweep"}, {"op", *op}, {"axis", *axis}, {"rows", jrows}};
        result.update(versions_json());
        json config{{"command", "sweep"}, {"op", *op},        {"axis", *axis},
                    {"values", values},   {"seq", *seq_spec}, {"trials", *trials},
                    {"seed", *seed}};
        out->deliver(make_record(config, result));
      };
    });
  }

  // ------------------------------------------------------------------- plot
  {
    auto* cmd = app.add_subcommand("plot", "render a sweep CSV as a static SVG");
    auto csv = std::make_shared<std::string>();
    auto svg = std::make_shared<std::string>();
    cmd->add_option("--csv", *csv, "sweep CSV path")->required();
    cmd->add_option("--svg", *svg, "output SVG path")->required();
    cmd->callback([=, &action] {
      action = [=] {
        emit_plot(*csv, *svg);
        std::cout << "wrote " << *svg << "\n";
      };
    });
  }

  try {
    app.parse(argc, argv);
    if (action) action();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "validation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UnsatisfiableError& e) {
    std::cerr << "unsatisfiable: " << e.what() << "\n";
    return kExitUnsatisfiable;
  } catch (const IoError& e) {
    std::cerr << "io: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
