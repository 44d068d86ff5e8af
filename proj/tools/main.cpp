#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "keyforge/bench.hpp"
#include "keyforge/cluster.hpp"
#include "keyforge/corpus.hpp"
#include "keyforge/curvature.hpp"
#include "keyforge/embed.hpp"
#include "keyforge/error.hpp"
#include "keyforge/io.hpp"
#include "keyforge/layout.hpp"
#include "keyforge/markov.hpp"
#include "keyforge/metric_opt.hpp"
#include "keyforge/multilang.hpp"
#include "keyforge/parallel.hpp"
#include "keyforge/svg.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;
using namespace keyforge;
using keyforge::cli::RunManifest;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::optional<unsigned> threads;
};

void add_optimizer_flags(CLI::App* sub, OptimizerConfig& cfg) {
  sub->add_option("--d-min", cfg.d_min, "Minimal key separation")->capture_default_str();
  sub->add_option("--c", cfg.c, "Lower bound on the pair norm")->capture_default_str();
  sub->add_option("--alpha", cfg.alpha, "Ridge weight")->capture_default_str();
  sub->add_option("--max-iters", cfg.max_iters, "Solver iteration cap")->capture_default_str();
  sub->add_option("--step-size", cfg.step_size, "Initial gradient step")->capture_default_str();
  sub->add_option("--tolerance", cfg.tolerance, "L-infinity iterate change to stop at")->capture_default_str();
}

Json json_of(const std::string& text, const fs::path& path) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Json base_config(const Globals& g, unsigned threads) {
  Json j;
  j["seed"] = g.seed;
  j["threads"] = threads;
  return j;
}

std::string text_of(const KeyboardLayout& layout) {
  std::string rows;
  for (int r = 0; r < layout.grid.rows; ++r) {
    std::string line(static_cast<std::size_t>(layout.grid.cols), '.');
    for (std::size_t i = 0; i < layout.keys.size(); ++i)
      if (layout.keys[i].row == r) line[static_cast<std::size_t>(layout.keys[i].col)] = layout.alphabet[i];
    rows += line + "\n";
  }
  return rows;
}

Eigen::VectorXd cluster_weights(const Eigen::VectorXd& pi, const Partition& p, bool side_a) {
  Eigen::VectorXd w = pi;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (p.in_a(static_cast<int>(i)) != side_a) w(i) = 0.0;
  return w / w.sum();
}

std::vector<EllipseOverlay> layout_ellipses(const KeyboardLayout& layout, const TransitionModel& model,
                                            const std::optional<Partition>& partition) {
  if (!(layout.alphabet == model.alphabet)) throw DataError("layout alphabet does not match the model");
  const Points pts = layout.positions();
  std::vector<EllipseOverlay> out;
  if (partition) {
    for (bool side : {true, false}) out.push_back({covariance_ellipse(pts, cluster_weights(model.pi, *partition, side)), "green"});
  }
  out.push_back({covariance_ellipse(pts, model.pi), "red"});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyboard layouts from letter-transition statistics"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (default: KEYFORGE_THREADS or 1)");
  std::function<void()> run;

  // ingest
  struct {
    fs::path input, out;
    std::string alphabet = Alphabet().letters();
  } ingest;
  auto* s_ingest = app.add_subcommand("ingest", "Bigram counts from a word,count CSV");
  s_ingest->add_option("-i,--input", ingest.input, "Word frequency CSV")->required();
  s_ingest->add_option("-o,--output", ingest.out, "Counts JSON")->required();
  s_ingest->add_option("--alphabet", ingest.alphabet)->capture_default_str();
  s_ingest->callback([&] {
    run = [&] {
      RunManifest m("ingest");
      m.config() = base_config(g, resolve_threads(g.threads));
      m.config()["alphabet"] = ingest.alphabet;
      const Alphabet alphabet(ingest.alphabet);
      std::istringstream in(m.read_input(ingest.input));
      IngestStats read_stats, stats;
      const auto records = read_word_frequency_csv(in, &read_stats);
      const auto counts = ingest_word_frequencies(records, alphabet, &stats);
      stats.records = read_stats.records;
      stats.malformed += read_stats.malformed;
      m.write_output(ingest.out, dump_json(to_json(counts)));
      m.diagnostics() = {{"records", stats.records}, {"used", stats.used},
                         {"skipped", stats.skipped}, {"malformed", stats.malformed}};
      m.finish(ingest.out);
      std::cerr << "records " << stats.records << ", used " << stats.used << ", skipped " << stats.skipped
                << ", malformed " << stats.malformed << "\n";
    };
  });

  // normalize-text
  struct {
    fs::path input, out;
    std::string alphabet = Alphabet().letters();
  } norm;
  auto* s_norm = app.add_subcommand("normalize-text", "Lowercase and keep alphabet letters only");
  s_norm->add_option("-i,--input", norm.input)->required();
  s_norm->add_option("-o,--output", norm.out)->required();
  s_norm->add_option("--alphabet", norm.alphabet)->capture_default_str();
  s_norm->callback([&] {
    run = [&] {
      RunManifest m("normalize-text");
      m.config() = base_config(g, resolve_threads(g.threads));
      m.config()["alphabet"] = norm.alphabet;
      const std::string text = normalize_text(m.read_input(norm.input), Alphabet(norm.alphabet));
      m.write_output(norm.out, text);
      m.diagnostics()["letters"] = text.size();
      m.finish(norm.out);
    };
  });

  // model
  struct {
    fs::path counts, out, frequencies;
    bool lenient = false;
  } mdl;
  auto* s_model = app.add_subcommand("model", "Transition matrix and stationary distribution");
  s_model->add_option("--counts", mdl.counts, "Counts JSON")->required();
  s_model->add_option("-o,--output", mdl.out)->required();
  s_model->add_flag("--lenient", mdl.lenient, "Accept reducible chains");
  s_model->add_option("--frequencies", mdl.frequencies, "Word CSV to reconcile pi against letter frequencies");
  s_model->callback([&] {
    run = [&] {
      RunManifest m("model");
      m.config() = base_config(g, resolve_threads(g.threads));
      m.config()["lenient"] = mdl.lenient;
      const auto counts = counts_from_json(json_of(m.read_input(mdl.counts), mdl.counts));
      StationaryOptions opts;
      opts.mode = mdl.lenient ? ChainMode::Lenient : ChainMode::Strict;
      const auto model = build_model(counts, opts);
      if (!mdl.frequencies.empty()) {
        std::istringstream in(m.read_input(mdl.frequencies));
        const auto records = read_word_frequency_csv(in);
        const double gap = stationary_gap(model, letter_frequencies(records, model.alphabet));
        m.diagnostics()["frequency_gap_l1"] = gap;
        if (gap > 0.05) std::cerr << "warning: stationary distribution differs from letter frequencies (L1 " << gap << ")\n";
      }
      m.write_output(mdl.out, dump_json(to_json(model)));
      m.finish(mdl.out);
    };
  });

  // optimize-h1
  struct {
    fs::path model, out;
    OptimizerConfig cfg;
  } opt;
  auto* s_opt = app.add_subcommand("optimize-h1", "Optimized one-handed distance matrix");
  s_opt->add_option("--model", opt.model)->required();
  s_opt->add_option("-o,--output", opt.out)->required();
  add_optimizer_flags(s_opt, opt.cfg);
  s_opt->callback([&] {
    run = [&] {
      RunManifest m("optimize-h1");
      m.config() = base_config(g, resolve_threads(g.threads));
      m.config()["optimizer"] = to_json(opt.cfg);
      const auto model = model_from_json(json_of(m.read_input(opt.model), opt.model));
      const auto sol = optimize_h1(model, opt.cfg);
      m.write_output(opt.out, dump_json(to_json(sol.distances)));
      m.diagnostics() = {{"objective", sol.objective}, {"residual", sol.residual}, {"iterations", sol.iterations}};
      m.finish(opt.out);
    };
  });

  // embed
  struct {
    fs::path distances, out, svg;
    bool align = false;
  } emb;
  auto* s_embed = app.add_subcommand("embed", "Classical MDS of a distance matrix");
  s_embed->add_option("--distances", emb.distances)->required();
  s_embed->add_option("-o,--output", emb.out)->required();
  s_embed->add_flag("--align", emb.align, "Rotate the principal axis onto x");
  s_embed->add_option("--svg", emb.svg, "Scatter plot");
  s_embed->callback([&] {
    run = [&] {
      RunManifest m("embed");
      m.config() = base_config(g, resolve_threads(g.threads));
      m.config()["align"] = emb.align;
      const auto d = distances_from_json(json_of(m.read_input(emb.distances), emb.distances));
      auto e = mds_embed(d);
      if (emb.align) e = align_to_grid(e);
      m.write_output(emb.out, dump_json(to_json(e)));
      if (!emb.svg.empty()) m.write_output(emb.svg, render_embedding_svg(e));
      m.finish(emb.out);
    };
  });

  // cluster
  struct {
    fs::path model, out;
    int min_size = 1;
    bool local = false;
    int restarts = 64;
  } clu;
  auto* s_cluster = app.add_subcommand("cluster", "Two-cluster alphabet partition");
  s_cluster->add_option("--model", clu.model)->required();
  s_cluster->add_option("-o,--output", clu.out)->required();
  s_cluster->add_option("--min-size", clu.min_size)->capture_default_str();
  s_cluster->add_flag("--local", clu.local, "Hill climbing instead of exhaustive search");
  s_cluster->add_option("--restarts", clu.restarts)->capture_default_str();
  s_cluster->callback([&] {
    run = [&] {
      RunManifest m("cluster");
      const unsigned threads = resolve_threads(g.threads);
      m.config() = base_config(g, threads);
      m.config()["min_size"] = clu.min_size;
      m.config()["local"] = clu.local;
      m.config()["restarts"] = clu.restarts;
      const auto model = model_from_json(json_of(m.read_input(clu.model), clu.model));
      PartitionSearchOptions opts{clu.min_size, threads};
      const Partition p = clu.local ? best_partition_local(model, clu.restarts, g.seed, opts)
                                    : best_partition_exact(model, opts);
      m.write_output(clu.out, dump_json(to_json(p, partition_objective(model, p))));
      m.finish(clu.out);
    };
  });

  // build-h1
  struct {
    fs::path model, out, svg;
    KeyGrid grid{3, 9};
    OptimizerConfig cfg;
  } h1;
  auto* s_h1 = app.add_subcommand("build-h1", "One-handed layout");
  s_h1->add_option("--model", h1.model)->required();
  s_h1->add_option("-o,--output", h1.out)->required();
  s_h1->add_option("--rows", h1.grid.rows)->capture_default_str();
  s_h1->add_option("--cols", h1.grid.cols)->capture_default_str();
  s_h1->add_option("--svg", h1.svg, "Keyboard rendering");
  add_optimizer_flags(s_h1, h1.cfg);
  s_h1->callback([&] {
    run = [&] {
      RunManifest m("build-h1");
      m.config() = base_config(g, resolve_threads(g.threads));
      m.config()["grid"] = {{"rows", h1.grid.rows}, {"cols", h1.grid.cols}};
      m.config()["optimizer"] = to_json(h1.cfg);
      const auto model = model_from_json(json_of(m.read_input(h1.model), h1.model));
      const auto build = build_h1_layout(model, h1.cfg, h1.grid);
      m.write_output(h1.out, dump_json(to_json(build.layout)));
      if (!h1.svg.empty()) m.write_output(h1.svg, render_layout_svg(build.layout));
      m.diagnostics() = {{"stress", build.stress},
                         {"assignment_cost", build.assignment_cost},
                         {"flipped", build.flipped},
                         {"iterations", build.iterations},
                         {"qap_objective", qap_objective(model, build.layout)}};
      m.finish(h1.out);
      std::cout << text_of(build.layout);
    };
  });

  // build-h2
  struct {
    fs::path model, out, partition_out, svg;
    int rows = 3;
    KeyGrid left{3, 0}, right{3, 0};
    int min_size = 1;
    OptimizerConfig cfg;
  } h2;
  auto* s_h2 = app.add_subcommand("build-h2", "Two-handed layout");
  s_h2->add_option("--model", h2.model)->required();
  s_h2->add_option("-o,--output", h2.out)->required();
  s_h2->add_option("--partition-out", h2.partition_out, "Partition JSON");
  s_h2->add_option("--rows", h2.rows, "Rows of both sub-grids when they are sized to fit")->capture_default_str();
  s_h2->add_option("--left-rows", h2.left.rows)->capture_default_str();
  s_h2->add_option("--left-cols", h2.left.cols, "0 sizes the grid to fit its cluster")->capture_default_str();
  s_h2->add_option("--right-rows", h2.right.rows)->capture_default_str();
  s_h2->add_option("--right-cols", h2.right.cols, "0 sizes the grid to fit its cluster")->capture_default_str();
  s_h2->add_option("--min-size", h2.min_size)->capture_default_str();
  s_h2->add_option("--svg", h2.svg, "Keyboard rendering with ellipses");
  add_optimizer_flags(s_h2, h2.cfg);
  s_h2->callback([&] {
    run = [&] {
      RunManifest m("build-h2");
      const unsigned threads = resolve_threads(g.threads);
      m.config() = base_config(g, threads);
      const bool fitted = h2.left.cols == 0 && h2.right.cols == 0;
      if (!fitted && (h2.left.cols <= 0 || h2.right.cols <= 0))
        throw CLI::ValidationError("give both --left-cols and --right-cols, or neither");
      if (fitted) {
        m.config()["rows"] = h2.rows;
      } else {
        m.config()["left_grid"] = {{"rows", h2.left.rows}, {"cols", h2.left.cols}};
        m.config()["right_grid"] = {{"rows", h2.right.rows}, {"cols", h2.right.cols}};
      }
      m.config()["min_size"] = h2.min_size;
      m.config()["optimizer"] = to_json(h2.cfg);
      const auto model = model_from_json(json_of(m.read_input(h2.model), h2.model));
      const PartitionSearchOptions search{h2.min_size, threads};
      const auto build = fitted ? build_h2_layout(model, h2.cfg, h2.rows, search)
                                : build_h2_layout(model, h2.cfg, h2.left, h2.right, search);
      m.write_output(h2.out, dump_json(to_json(build.layout)));
      if (!h2.partition_out.empty())
        m.write_output(h2.partition_out, dump_json(to_json(build.partition, build.partition_objective)));
      if (!h2.svg.empty())
        m.write_output(h2.svg, render_layout_svg(build.layout, layout_ellipses(build.layout, model, build.partition)));
      m.diagnostics() = {{"partition_objective", build.partition_objective},
                         {"A", build.partition.letters_a()},
                         {"B", build.partition.letters_b()},
                         {"left_stress", build.left.stress},
                         {"right_stress", build.right.stress}};
      m.finish(h2.out);
      std::cout << text_of(build.layout);
    };
  });

  // curvature
  struct {
    fs::path model, distances, out, mean_out, svg;
    int k_min = 2, k_max = 7;
  } cur;
  auto* s_cur = app.add_subcommand("curvature", "Ollivier-Ricci and Gauss curvature per letter");
  s_cur->add_option("--model", cur.model)->required();
  s_cur->add_option("--distances", cur.distances)->required();
  s_cur->add_option("-o,--output", cur.out, "Per-k CSV")->required();
  s_cur->add_option("--mean-out", cur.mean_out, "Averaged CSV");
  s_cur->add_option("--k-min", cur.k_min)->capture_default_str();
  s_cur->add_option("--k-max", cur.k_max)->capture_default_str();
  s_cur->add_option("--svg", cur.svg, "Bar chart of the averaged curvature");
  s_cur->callback([&] {
    run = [&] {
      RunManifest m("curvature");
      const unsigned threads = resolve_threads(g.threads);
      m.config() = base_config(g, threads);
      m.config()["k_min"] = cur.k_min;
      m.config()["k_max"] = cur.k_max;
      const auto model = model_from_json(json_of(m.read_input(cur.model), cur.model));
      const auto d = distances_from_json(json_of(m.read_input(cur.distances), cur.distances));
      if (!(d.alphabet == model.alphabet)) throw DataError("distance alphabet does not match the model");
      const auto report = gauss_curvatures(model, d.d, cur.k_min, cur.k_max, threads);
      m.write_output(cur.out, curvature_csv(report));
      if (!cur.mean_out.empty()) m.write_output(cur.mean_out, curvature_mean_csv(report));
      if (!cur.svg.empty()) m.write_output(cur.svg, render_curvature_svg(report));
      m.finish(cur.out);
    };
  });

  // layout-render
  struct {
    fs::path layout, out, model, partition;
  } ren;
  auto* s_ren = app.add_subcommand("layout-render", "SVG keyboard, optionally with covariance ellipses");
  s_ren->add_option("--layout", ren.layout)->required();
  s_ren->add_option("-o,--output", ren.out)->required();
  s_ren->add_option("--model", ren.model, "Draw the whole-layout ellipse");
  s_ren->add_option("--partition", ren.partition, "Also draw one ellipse per cluster")->needs("--model");
  s_ren->callback([&] {
    run = [&] {
      RunManifest m("layout-render");
      m.config() = base_config(g, resolve_threads(g.threads));
      const auto layout = layout_from_json(json_of(m.read_input(ren.layout), ren.layout));
      std::vector<EllipseOverlay> overlays;
      if (!ren.model.empty()) {
        const auto model = model_from_json(json_of(m.read_input(ren.model), ren.model));
        std::optional<Partition> p;
        if (!ren.partition.empty()) p = partition_from_json(json_of(m.read_input(ren.partition), ren.partition));
        overlays = layout_ellipses(layout, model, p);
      }
      m.write_output(ren.out, render_layout_svg(layout, overlays));
      m.finish(ren.out);
    };
  });

  // bench
  struct {
    fs::path layout, baseline, text, out, partition, baseline_partition;
    int hands = 1;
  } ben;
  auto* s_bench = app.add_subcommand("bench", "Compare a layout with a baseline on a text");
  s_bench->add_option("--layout", ben.layout)->required();
  s_bench->add_option("--baseline", ben.baseline)->required();
  s_bench->add_option("--text", ben.text, "Raw text; it is normalized first")->required();
  s_bench->add_option("-o,--output", ben.out)->required();
  s_bench->add_option("--hands", ben.hands)->check(CLI::IsMember({1, 2}))->capture_default_str();
  s_bench->add_option("--partition", ben.partition, "Partition of the layout (two hands)");
  s_bench->add_option("--baseline-partition", ben.baseline_partition, "Partition of the baseline (two hands)");
  s_bench->callback([&] {
    run = [&] {
      if (ben.hands == 2 && (ben.partition.empty() || ben.baseline_partition.empty()))
        throw CLI::ValidationError("--hands 2 needs --partition and --baseline-partition");
      RunManifest m("bench");
      m.config() = base_config(g, resolve_threads(g.threads));
      m.config()["hands"] = ben.hands;
      const auto ours = layout_from_json(json_of(m.read_input(ben.layout), ben.layout));
      const auto base = layout_from_json(json_of(m.read_input(ben.baseline), ben.baseline));
      const std::string text = normalize_text(m.read_input(ben.text), ours.alphabet);
      BenchReport r_ours, r_base;
      if (ben.hands == 1) {
        r_ours = simulate_h1(ours, text, ben.layout.stem().string());
        r_base = simulate_h1(base, text, ben.baseline.stem().string());
      } else {
        const auto p_ours = partition_from_json(json_of(m.read_input(ben.partition), ben.partition));
        const auto p_base =
            partition_from_json(json_of(m.read_input(ben.baseline_partition), ben.baseline_partition));
        r_ours = simulate_h2(ours, p_ours, text, ben.layout.stem().string());
        r_base = simulate_h2(base, p_base, text, ben.baseline.stem().string());
      }
      const auto cmp = compare(r_ours, r_base);
      Json j;
      j["hands"] = ben.hands;
      j["layout"] = to_json(r_ours);
      j["baseline"] = to_json(r_base);
      j["ratio"] = cmp.ratio;
      j["percent_improvement"] = cmp.percent_improvement;
      m.write_output(ben.out, dump_json(j));
      m.finish(ben.out);
      char line[160];
      std::printf("%-20s %14s %12s\n", "layout", "a.u./trans", "total");
      for (const auto* r : {&r_base, &r_ours}) {
        std::snprintf(line, sizeof line, "%-20s %14.4f %12.1f\n", r->layout_id.c_str(), r->per_transition, r->total);
        std::cout << line;
      }
      std::snprintf(line, sizeof line, "improvement %.2f%%\n", cmp.percent_improvement);
      std::cout << line;
    };
  });

  // ellipse
  struct {
    fs::path layout, model, partition, out;
  } ell;
  auto* s_ell = app.add_subcommand("ellipse", "Pi-weighted covariance ellipses of a layout");
  s_ell->add_option("--layout", ell.layout)->required();
  s_ell->add_option("--model", ell.model)->required();
  s_ell->add_option("--partition", ell.partition, "Also compute one ellipse per cluster");
  s_ell->add_option("-o,--output", ell.out)->required();
  s_ell->callback([&] {
    run = [&] {
      RunManifest m("ellipse");
      m.config() = base_config(g, resolve_threads(g.threads));
      const auto layout = layout_from_json(json_of(m.read_input(ell.layout), ell.layout));
      const auto model = model_from_json(json_of(m.read_input(ell.model), ell.model));
      std::optional<Partition> p;
      if (!ell.partition.empty()) p = partition_from_json(json_of(m.read_input(ell.partition), ell.partition));
      const auto overlays = layout_ellipses(layout, model, p);
      Json j;
      j["whole"] = to_json(overlays.back().ellipse);
      if (p) {
        j["A"] = to_json(overlays[0].ellipse);
        j["B"] = to_json(overlays[1].ellipse);
      }
      m.write_output(ell.out, dump_json(j));
      m.finish(ell.out);
    };
  });

  // distortion
  struct {
    fs::path layout, other, model, out;
  } dis;
  auto* s_dis = app.add_subcommand("distortion", "Keyboard-to-keyboard distortion");
  s_dis->add_option("--layout", dis.layout)->required();
  s_dis->add_option("--other", dis.other)->required();
  s_dis->add_option("--model", dis.model, "Weight letter pairs by the stationary distribution");
  s_dis->add_option("-o,--output", dis.out)->required();
  s_dis->callback([&] {
    run = [&] {
      RunManifest m("distortion");
      m.config() = base_config(g, resolve_threads(g.threads));
      const auto x = layout_from_json(json_of(m.read_input(dis.layout), dis.layout));
      const auto y = layout_from_json(json_of(m.read_input(dis.other), dis.other));
      Json j;
      j["distortion"] = keyboard_distortion(x, y);
      if (!dis.model.empty()) {
        const auto model = model_from_json(json_of(m.read_input(dis.model), dis.model));
        j["weighted_distortion"] = keyboard_distortion(x, y, model.pi);
      }
      m.write_output(dis.out, dump_json(j));
      m.finish(dis.out);
    };
  });

  // barycenter
  struct {
    std::vector<fs::path> models;
    std::vector<double> weights;
    fs::path ground, out;
    BarycenterOptions opts;
  } bar;
  auto* s_bar = app.add_subcommand("barycenter", "Wasserstein barycenter of transition models");
  s_bar->add_option("--models", bar.models, "Model JSON files")->required();
  s_bar->add_option("--ground", bar.ground, "Layout or distance JSON giving the ground metric")->required();
  s_bar->add_option("--weights", bar.weights, "One weight per model (default uniform)");
  s_bar->add_option("-o,--output", bar.out)->required();
  s_bar->callback([&] {
    run = [&] {
      RunManifest m("barycenter");
      m.config() = base_config(g, resolve_threads(g.threads));
      m.config()["weights"] = bar.weights;
      m.config()["eps_start"] = bar.opts.eps_start;
      m.config()["eps_end"] = bar.opts.eps_end;
      LanguageEnsemble ensemble;
      for (const auto& path : bar.models) ensemble.models.push_back(model_from_json(json_of(m.read_input(path), path)));
      if (!bar.weights.empty()) ensemble.weights = Eigen::Map<const Eigen::VectorXd>(bar.weights.data(), bar.weights.size());
      const Json ground_json = json_of(m.read_input(bar.ground), bar.ground);
      Eigen::MatrixXd ground;
      Alphabet ground_alphabet;
      if (ground_json.contains("keys")) {
        const auto layout = layout_from_json(ground_json);
        ground = pairwise_distances(layout.positions());
        ground_alphabet = layout.alphabet;
      } else {
        const auto d = distances_from_json(ground_json);
        ground = d.d;
        ground_alphabet = d.alphabet;
      }
      if (ensemble.models.empty() || !(ground_alphabet == ensemble.models.front().alphabet))
        throw DataError("ground metric alphabet does not match the models");
      const auto model = barycenter_model(ensemble, ground, bar.opts);
      m.write_output(bar.out, dump_json(to_json(model)));
      m.finish(bar.out);
    };
  });

  // qwerty
  struct {
    int hands = 1;
    fs::path out, partition_out;
  } qw;
  auto* s_qw = app.add_subcommand("qwerty", "QWERTY reference layout");
  s_qw->add_option("--hands", qw.hands)->check(CLI::IsMember({1, 2}))->capture_default_str();
  s_qw->add_option("-o,--output", qw.out)->required();
  s_qw->add_option("--partition-out", qw.partition_out, "Hand split (two hands)");
  s_qw->callback([&] {
    run = [&] {
      RunManifest m("qwerty");
      m.config() = base_config(g, resolve_threads(g.threads));
      m.config()["hands"] = qw.hands;
      const auto ref = qwerty_reference(qw.hands);
      m.write_output(qw.out, dump_json(to_json(ref.layout)));
      if (ref.partition && !qw.partition_out.empty())
        m.write_output(qw.partition_out, dump_json(to_json(*ref.partition, 0.0)));
      m.finish(qw.out);
    };
  });

  try {
    app.parse(argc, argv);
    run();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
