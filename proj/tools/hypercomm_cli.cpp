#include "hypercomm/hypercomm.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace {

using Settings = std::vector<std::pair<std::string, std::string>>;

struct Failure {
  hc_status status;
};

void check(hc_status s) {
  if (s != HC_OK) throw Failure{s};
}

// Options forwarded verbatim to the pipeline configuration.
void add_pipeline_options(CLI::App* app, Settings& settings) {
  auto opt = [&](const char* flag, const char* key, const char* help) {
    app->add_option_function<std::string>(flag, [&settings, key](const std::string& v) { settings.emplace_back(key, v); },
                                          help);
  };
  auto flag = [&](const char* name, const char* key, const char* help) {
    app->add_flag_callback(name, [&settings, key] { settings.emplace_back(key, "true"); }, help);
  };
  opt("--lambda", "lambda", "Lasso penalty (default 0.01)");
  opt("--tol", "tol", "Lasso KKT tolerance (default 1e-8)");
  opt("--max-iter", "max_iter", "Lasso sweep limit (default 10000)");
  opt("--e", "e_subject", "subject hyperedge order, or 'auto' (default auto)");
  opt("--e-max", "e_max", "upper bound of the automatic order search (default: number of ROIs)");
  opt("--k", "k_override", "number of clusters instead of the eigengap choice");
  opt("--k-max", "k_max", "largest k considered by the eigengap rule (default 30)");
  opt("--seed", "seed", "master seed (default 0)");
  opt("--kmeans-restarts", "kmeans_n_init", "k-means restarts (default 20)");
  opt("--kmeans-max-iter", "kmeans_max_iter", "k-means iterations per restart (default 300)");
  opt("--threads", "threads", "worker threads (default 1)");
  flag("--positive-only", "positive_only", "keep only positive-weight picks in hyperedges");
  flag("--transpose", "transpose", "input files hold one ROI per column");
}

void add_group_options(CLI::App* app, Settings& settings) {
  auto opt = [&](const char* flag, const char* key, const char* help) {
    app->add_option_function<std::string>(flag, [&settings, key](const std::string& v) { settings.emplace_back(key, v); },
                                          help);
  };
  opt("--e-group", "e_group", "group hyperedge order (default 6)");
  opt("--n-perm", "n_perm", "permutations for the p-values (default 100)");
  app->add_flag_callback("--auto-order", [&settings] { settings.emplace_back("auto_group_order", "true"); },
                         "pick the smallest connected group order instead of --e-group");
  app->add_flag_callback("--skip-failures", [&settings] { settings.emplace_back("skip_failures", "true"); },
                         "drop subjects that fail instead of aborting");
}

hc_config* make_config(const Settings& settings) {
  hc_config* cfg = nullptr;
  check(hc_config_create(&cfg));
  for (const auto& [key, value] : settings) {
    const hc_status s = hc_config_set(cfg, key.c_str(), value.c_str());
    if (s != HC_OK) {
      hc_config_free(cfg);
      throw Failure{s};
    }
  }
  return cfg;
}

std::string fmt(double v, const char* spec = "%.4f") {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void print_report(const hc_report* r) {
  std::printf("%-10s %6s %8s %8s %8s %8s %8s\n", "community", "size", "Q", "Q_std", "Q_rand", "p", "z");
  for (int64_t c = 0; c < hc_report_n_communities(r); ++c) {
    std::printf("%-10lld %6lld %8s %8s %8s %8s %8s\n", static_cast<long long>(c),
                static_cast<long long>(hc_report_community_size(r, c)), fmt(hc_report_q_mean(r, c)).c_str(),
                fmt(hc_report_q_std(r, c)).c_str(), fmt(hc_report_q_random_mean(r, c)).c_str(),
                fmt(hc_report_p_value(r, c)).c_str(), fmt(hc_report_z_score(r, c), "%.2f").c_str());
  }
}

void print_cover(const hc_cover* c) {
  std::printf("communities: %lld (sizes", static_cast<long long>(hc_cover_n_communities(c)));
  for (int64_t i = 0; i < hc_cover_n_communities(c); ++i)
    std::printf(" %lld", static_cast<long long>(hc_cover_community_size(c, i)));
  std::printf(")\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlapping community detection on hypergraphs learned from multivariate time series."};
  app.require_subcommand(1);
  app.set_version_flag("--version", hc_version());

  Settings settings;

  auto* subject = app.add_subcommand("subject", "process one time-series file");
  std::string subject_file, subject_out;
  subject->add_option("file", subject_file, "time-series CSV/TSV, one ROI per row")->required();
  subject->add_option("--out", subject_out, "output directory (omit to skip writing artifacts)");
  add_pipeline_options(subject, settings);

  auto* group = app.add_subcommand("group", "process every subject and build the consensus cover");
  std::string group_input, group_out;
  group->add_option("--input", group_input, "file pattern such as 'data/sub-*_run-*.csv', or a directory")->required();
  group->add_option("--out", group_out, "output directory")->required();
  add_pipeline_options(group, settings);
  add_group_options(group, settings);

  auto* synth = app.add_subcommand("synth", "write a synthetic cohort with a planted chain of communities");
  hc_synth_params params;
  hc_synth_params_default(&params);
  std::string synth_out;
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--n-rois", params.n_rois, "ROIs")->capture_default_str();
  synth->add_option("--n-timepoints", params.n_timepoints, "time points")->capture_default_str();
  synth->add_option("--communities", params.n_communities, "planted communities")->capture_default_str();
  synth->add_option("--overlap", params.overlap, "nodes shared by adjacent communities")->capture_default_str();
  synth->add_option("--signal", params.signal_strength, "latent signal amplitude")->capture_default_str();
  synth->add_option("--noise", params.noise_std, "noise standard deviation")->capture_default_str();
  synth->add_option("--ar", params.ar, "AR(1) coefficient of the latent signals")->capture_default_str();
  synth->add_option("--subjects", params.n_subjects, "subjects")->capture_default_str();
  synth->add_option("--runs", params.n_runs, "runs per subject")->capture_default_str();
  synth->add_option("--seed", params.seed, "seed")->capture_default_str();

  auto* score = app.add_subcommand("score", "score a cover against the subject hypergraphs of a group run");
  std::string score_cover, score_dir, score_json;
  int64_t score_perm = 100;
  uint64_t score_seed = 0;
  score->add_option("--cover", score_cover, "cover JSON")->required();
  score->add_option("--run-dir", score_dir, "output directory of a group run")->required();
  score->add_option("--n-perm", score_perm, "permutations")->capture_default_str();
  score->add_option("--seed", score_seed, "seed")->capture_default_str();
  score->add_option("--json", score_json, "also write the report here");

  auto* exp = app.add_subcommand("export", "write one intermediate matrix of a single file as CSV");
  std::string exp_input, exp_kind, exp_out;
  exp->add_option("--input", exp_input, "time-series file")->required();
  exp->add_option("--kind", exp_kind, "normalized, weights, incidence, line-graph, laplacian or eigenvalues")
      ->required()
      ->check(CLI::IsMember({"normalized", "weights", "incidence", "line-graph", "laplacian", "eigenvalues"}));
  exp->add_option("--out", exp_out, "CSV path")->required();
  add_pipeline_options(exp, settings);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  hc_config* cfg = nullptr;
  try {
    if (*subject) {
      if (!subject_out.empty()) settings.emplace_back("output_dir", subject_out);
      cfg = make_config(settings);
      hc_cover* cover = nullptr;
      int64_t order = 0;
      check(hc_run_subject(cfg, subject_file.c_str(), &cover, &order));
      std::printf("hyperedge order: %lld\n", static_cast<long long>(order));
      print_cover(cover);
      hc_cover_free(cover);
    } else if (*group) {
      settings.emplace_back("input_glob", group_input);
      settings.emplace_back("output_dir", group_out);
      cfg = make_config(settings);
      hc_group* g = nullptr;
      check(hc_run_group(cfg, &g));
      for (int64_t i = 0; i < hc_group_n_skipped(g); ++i) std::fprintf(stderr, "skipped %s\n", hc_group_skipped(g, i));
      if (hc_group_n_unconverged(g) > 0)
        std::fprintf(stderr, "warning: %lld Lasso rows reached the iteration limit\n",
                     static_cast<long long>(hc_group_n_unconverged(g)));
      std::printf("subjects/runs: %lld, subject order: %lld, group order: %lld\n",
                  static_cast<long long>(hc_group_n_subjects(g)), static_cast<long long>(hc_group_e_subject(g)),
                  static_cast<long long>(hc_group_e_group(g)));
      print_cover(hc_group_cover(g));
      print_report(hc_group_report(g));
      hc_group_free(g);
    } else if (*synth) {
      check(hc_synth_write(&params, synth_out.c_str()));
      std::printf("wrote %lld files to %s\n", static_cast<long long>(params.n_subjects * params.n_runs),
                  synth_out.c_str());
    } else if (*score) {
      hc_report* r = nullptr;
      check(hc_score_cover(score_cover.c_str(), score_dir.c_str(), score_perm, score_seed, &r));
      print_report(r);
      if (!score_json.empty()) {
        char* json = nullptr;
        const hc_status s = hc_report_json(r, &json);
        if (s == HC_OK) {
          std::FILE* f = std::fopen(score_json.c_str(), "wb");
          if (f) {
            std::fputs(json, f);
            std::fclose(f);
          }
          hc_string_free(json);
          if (!f) {
            hc_report_free(r);
            std::fprintf(stderr, "error: cannot write %s\n", score_json.c_str());
            return 1;
          }
        }
        hc_report_free(r);
        check(s);
      } else {
        hc_report_free(r);
      }
    } else if (*exp) {
      cfg = make_config(settings);
      check(hc_export(cfg, exp_input.c_str(), exp_kind.c_str(), exp_out.c_str()));
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error (%s): %s\n", hc_status_name(f.status), hc_last_error());
    hc_config_free(cfg);
    return hc_status_exit_code(f.status);
  }
  hc_config_free(cfg);
  return 0;
}
