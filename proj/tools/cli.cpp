#include "cli.hpp"

#include <CLI11.hpp>

#include "latinhib/errors.hpp"

namespace latinhib::cli {

namespace {

std::string input_description(const CliConfig& cfg) {
  switch (cfg.input_kind) {
    case InputKind::iris:
      return "builtin:iris";
    case InputKind::distances:
      return "distances:" + cfg.input.string();
    case InputKind::points:
      break;
  }
  std::string s = "points:" + cfg.input.string();
  if (cfg.header) s += " header=1";
  if (cfg.label_column) s += " label_column=" + std::to_string(*cfg.label_column);
  return s;
}

DistanceMatrix load_distances(const CliConfig& cfg) {
  switch (cfg.input_kind) {
    case InputKind::iris:
      return distances_from_points(load_iris().points);
    case InputKind::distances:
      return read_distance_csv(cfg.input);
    case InputKind::points:
      break;
  }
  return distances_from_points(read_points_csv(cfg.input, cfg.header, cfg.label_column).points);
}

void log_dynamics(const CliConfig& cfg, std::ostream& err) {
  err << "config: alpha=" << format_double(cfg.dynamics.alpha)
      << " max_iters=" << cfg.dynamics.max_iters
      << " stagnation_eps=" << format_double(cfg.dynamics.stagnation_eps) << "\n";
}

// Runs `body` and maps library errors onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const NonconvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::nonconvergence;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::input;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
}

std::string join(const std::vector<std::size_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

void add_input_options(CLI::App& sub, CliConfig& cfg, std::string& points, std::string& distances,
                       bool& iris) {
  auto* p = sub.add_option("--points", points, "CSV of feature vectors, one object per row");
  auto* d = sub.add_option("--distances", distances, "square CSV distance matrix");
  auto* i = sub.add_flag("--iris", iris, "use the embedded Fisher iris data");
  p->excludes(d)->excludes(i);
  d->excludes(i);
  sub.add_flag("--header", cfg.header, "points CSV has a header line");
  sub.add_option("--label-column", cfg.label_column,
                 "zero-based column holding labels (ignored for clustering)");
}

void add_dynamics_options(CLI::App& sub, CliConfig& cfg) {
  sub.add_option("--alpha", cfg.dynamics.alpha, "transfer speed")->capture_default_str();
  sub.add_option("--max-iters", cfg.dynamics.max_iters, "iteration cap")->capture_default_str();
  sub.add_option("--stagnation-eps", cfg.dynamics.stagnation_eps,
                 "activity change treated as a fixed point")
      ->capture_default_str();
}

void resolve_input(CliConfig& cfg, const std::string& points, const std::string& distances,
                   bool iris) {
  const int sources = int(!points.empty()) + int(!distances.empty()) + int(iris);
  if (sources != 1) {
    throw ParameterError("exactly one of --points, --distances or --iris is required");
  }
  if (iris) {
    cfg.input_kind = InputKind::iris;
  } else if (!distances.empty()) {
    cfg.input_kind = InputKind::distances;
    cfg.input = distances;
  } else {
    cfg.input_kind = InputKind::points;
    cfg.input = points;
  }
}

}  // namespace

int cmd_cluster(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    cfg.dynamics.validate();
    err << "config: subcommand=cluster input=" << input_description(cfg)
        << " t=" << format_double(cfg.t) << "\n";
    log_dynamics(cfg, err);

    const DistanceMatrix dm = load_distances(cfg);
    const ClusteringResult result = cluster_at_threshold(dm, cfg.t, cfg.dynamics);
    if (!cfg.json_out.empty()) write_result_json(result, cfg.json_out);

    out << "k=" << result.k << "\n";
    out << "class_sizes=" << join(result.class_sizes) << "\n";
    out << "centers=" << join(result.centers) << "\n";
    out << "iters=" << result.iters << "\n";
    return exit_code::ok;
  });
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    cfg.dynamics.validate();
    if (cfg.plateau_source != "auto" && cfg.plateau_source != "raw" &&
        cfg.plateau_source != "filtered") {
      throw ParameterError("--plateaus-from must be raw, filtered or auto");
    }
    const DistanceMatrix dm = load_distances(cfg);
    GridOptions grid_options = cfg.grid;
    if (!grid_options.t_max) grid_options.t_max = default_t_max(dm);
    const bool use_filtered = cfg.plateau_source == "filtered" ||
                              (cfg.plateau_source == "auto" && cfg.min_class_size > 1);

    err << "config: subcommand=sweep input=" << input_description(cfg) << " n=" << dm.size()
        << " max_distance=" << format_double(dm.max()) << "\n";
    err << "config: grid=" << to_string(grid_options.mode) << " steps=" << grid_options.steps
        << " t_min=" << format_double(grid_options.t_min)
        << " t_max=" << format_double(*grid_options.t_max)
        << (cfg.grid.t_max ? "" : " (auto: 1.01*max_distance)") << "\n";
    err << "config: min_class_size=" << cfg.min_class_size
        << " plateaus_from=" << (use_filtered ? "filtered" : "raw")
        << " threads=" << cfg.threads << "\n";
    log_dynamics(cfg, err);

    const SweepGrid grid = make_grid(dm, grid_options);
    const SweepCurve curve = sweep(dm, grid, cfg.dynamics, cfg.min_class_size, cfg.threads);
    const std::vector<Plateau> plateaus = detect_plateaus(curve, use_filtered);

    if (!cfg.tsv_out.empty()) write_curve_tsv(curve, cfg.tsv_out);
    if (!cfg.plateaus_out.empty()) {
      PlateauReportMeta meta;
      meta.use_filtered = use_filtered;
      meta.min_class_size = cfg.min_class_size;
      meta.alpha = cfg.dynamics.alpha;
      meta.max_distance = dm.max();
      meta.grid_mode = std::string(to_string(grid.mode));
      meta.grid_points = grid.t_values.size();
      write_plateaus_json(plateaus, meta, cfg.plateaus_out);
    }
    if (!cfg.svg_out.empty()) render_curve_svg(curve, plateaus, cfg.svg_out);

    const auto nonconverged = std::count_if(curve.samples.begin(), curve.samples.end(),
                                            [](const SweepSample& s) { return !s.converged; });
    out << "samples=" << curve.samples.size() << " nonconverged=" << nonconverged << "\n";
    const std::size_t shown = std::min(cfg.top, plateaus.size());
    for (std::size_t i = 0; i < shown; ++i) {
      const Plateau& p = plateaus[i];
      out << "plateau k=" << p.k << " t_start=" << format_double(p.t_start)
          << " t_end=" << format_double(p.t_end) << " width=" << format_double(p.width)
          << " samples=" << p.sample_count << "\n";
    }
    return exit_code::ok;
  });
}

int cmd_gen(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BlobSpec& b = cfg.blobs;
    err << "config: subcommand=gen clusters=" << b.clusters
        << " points_per_cluster=" << b.points_per_cluster << " sigma=" << format_double(b.sigma)
        << " dim=" << b.dim << " center_box=" << format_double(b.center_box)
        << " min_separation=" << format_double(b.min_center_separation) << " seed=" << b.seed
        << "\n";
    if (cfg.points_out.empty()) throw ParameterError("--out is required");

    const BlobData data = gen_blobs(b);
    std::vector<std::string> labels;
    labels.reserve(data.labels.size());
    for (const std::size_t l : data.labels) labels.push_back("c" + std::to_string(l));
    write_points_csv(data.points, labels, cfg.points_out);

    out << "wrote " << data.points.size() << " points (" << b.clusters << " clusters x "
        << b.points_per_cluster << ", dim " << b.dim << ") to " << cfg.points_out.string()
        << "\n";
    return exit_code::ok;
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance-based clustering by lateral-inhibition activity transfer", "latinhib"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string points, distances, t_max = "auto", grid_mode = "uniform";
  bool iris = false;

  auto* cluster = app.add_subcommand("cluster", "cluster at a single interaction threshold");
  add_input_options(*cluster, cfg, points, distances, iris);
  cluster->add_option("-t,--t", cfg.t, "interaction threshold T")->required();
  add_dynamics_options(*cluster, cfg);
  cluster->add_option("--json", cfg.json_out, "write the clustering result here");

  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate K(T) over a threshold grid");
  add_input_options(*sweep_cmd, cfg, points, distances, iris);
  sweep_cmd->add_option("--grid", grid_mode, "uniform | quantile")->capture_default_str();
  sweep_cmd->add_option("--steps", cfg.grid.steps, "grid points")->capture_default_str();
  sweep_cmd->add_option("--t-min", cfg.grid.t_min, "smallest threshold")->capture_default_str();
  sweep_cmd->add_option("--t-max", t_max, "largest threshold or 'auto' (1.01 * max distance)")
      ->capture_default_str();
  add_dynamics_options(*sweep_cmd, cfg);
  sweep_cmd->add_option("--min-class-size", cfg.min_class_size,
                        "classes smaller than this are not counted in k_filtered")
      ->capture_default_str();
  sweep_cmd->add_option("--plateaus-from", cfg.plateau_source,
                        "raw | filtered | auto (filtered when --min-class-size > 1)")
      ->capture_default_str();
  sweep_cmd->add_option("--top", cfg.top, "plateaus printed")->capture_default_str();
  sweep_cmd->add_option("--threads", cfg.threads, "worker threads, 0 = all cores")
      ->capture_default_str();
  sweep_cmd->add_option("--tsv", cfg.tsv_out, "write the K(T) curve here");
  sweep_cmd->add_option("--plateaus", cfg.plateaus_out, "write the plateau report (JSON) here");
  sweep_cmd->add_option("--svg", cfg.svg_out, "write a K(T) plot here");

  auto* gen = app.add_subcommand("gen", "generate Gaussian blobs as a labelled points CSV");
  gen->add_option("--clusters", cfg.blobs.clusters, "number of blobs")->capture_default_str();
  gen->add_option("--points-per-cluster", cfg.blobs.points_per_cluster,
                  "points drawn around each center")
      ->capture_default_str();
  gen->add_option("--sigma", cfg.blobs.sigma, "per-coordinate standard deviation")
      ->capture_default_str();
  gen->add_option("--dim", cfg.blobs.dim, "dimension of the points")->capture_default_str();
  gen->add_option("--center-box", cfg.blobs.center_box, "half-width of the center cube")
      ->capture_default_str();
  gen->add_option("--min-separation", cfg.blobs.min_center_separation,
                  "minimum distance between centers")
      ->capture_default_str();
  gen->add_option("--seed", cfg.blobs.seed, "seed for the mt19937_64 generator")
      ->capture_default_str();
  gen->add_option("-o,--out", cfg.points_out, "output CSV")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (cluster->parsed() || sweep_cmd->parsed()) resolve_input(cfg, points, distances, iris);
    if (sweep_cmd->parsed()) {
      cfg.grid.mode = parse_grid_mode(grid_mode);
      if (t_max != "auto") {
        std::size_t used = 0;
        cfg.grid.t_max = std::stod(t_max, &used);
        if (used != t_max.size()) throw std::invalid_argument(t_max);
      }
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::logic_error&) {
    err << "error: --t-max expects a number or 'auto', got '" << t_max << "'\n";
    return exit_code::usage;
  }

  if (cluster->parsed()) {
    cfg.subcommand = "cluster";
    return cmd_cluster(cfg, out, err);
  }
  if (sweep_cmd->parsed()) {
    cfg.subcommand = "sweep";
    return cmd_sweep(cfg, out, err);
  }
  cfg.subcommand = "gen";
  return cmd_gen(cfg, out, err);
}

}  // namespace latinhib::cli
