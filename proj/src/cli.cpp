#include "sparsestream/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sparsestream/carowei.hpp"
#include "sparsestream/detail/mix.hpp"
#include "sparsestream/forest.hpp"
#include "sparsestream/oracle.hpp"

namespace sparsestream::cli {

namespace {

struct AlgorithmName {
  Algorithm algorithm;
  const char* name;
};

constexpr AlgorithmName kAlgorithms[] = {
    {Algorithm::CwBase, "cw-base"},   {Algorithm::CwOnline, "cw-online"}, {Algorithm::CwUnbounded, "cw-unbounded"},
    {Algorithm::CwVertex, "cw-vertex"}, {Algorithm::Beta1p, "beta-1p"},    {Algorithm::Beta2p, "beta-2p"},
    {Algorithm::Gamma1p, "gamma-1p"}, {Algorithm::Gamma2p, "gamma-2p"},   {Algorithm::Phi1p, "phi-1p"},
    {Algorithm::Phi2p, "phi-2p"},
};

bool is_forest_algorithm(Algorithm a) { return parameter_of(a) != Parameter::Lambda; }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

StreamOrder parse_order(const std::string& s) {
  if (s == "arbitrary") return StreamOrder::Arbitrary;
  if (s == "random") return StreamOrder::Random;
  throw Error(ErrorKind::InvalidArgument, "unknown order '" + s + "' (arbitrary, random)");
}

StreamModel parse_model(const std::string& s) {
  if (s == "edge") return StreamModel::EdgeArrival;
  if (s == "vertex") return StreamModel::VertexArrival;
  throw Error(ErrorKind::InvalidArgument, "unknown model '" + s + "' (edge, vertex)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
}

unsigned worker_count(unsigned requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("SPARSESTREAM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CwConfig cw_config(const StreamSequence& stream, const EstimateOptions& opt) {
  CwConfig cfg;
  cfg.epsilon = opt.epsilon;
  cfg.seed = opt.seed;
  cfg.avg_degree_bound = opt.avg_degree.value_or(2.0 * static_cast<double>(stream.final_edges().size()) / stream.n());
  return cfg;
}

ForestCounts counts_from_truth(const GroundTruth& t) {
  ForestCounts c;
  c.deg1_hat = static_cast<double>(t.deg1);
  c.deg_ge2_hat = static_cast<double>(t.deg_ge2);
  c.supp_hat = static_cast<double>(t.supp);
  c.components = t.components;
  c.m = t.m;
  c.exact_small = std::make_pair(t.supp, t.deg_ge2);
  return c;
}

TrialRow make_row(Algorithm a, std::uint64_t trial, std::uint64_t seed, const EstimateReport& r, double truth) {
  TrialRow row;
  row.trial = trial;
  row.seed = seed;
  row.truth = truth;
  row.estimate = r.point;
  row.lower = r.lower;
  row.upper = r.upper;
  row.ratio = trial_ratio(r.point, truth);
  row.success = trial_success(a, r, truth);
  row.status = r.degraded() ? "degraded" : "ok";
  row.space_bytes = r.space_bytes;
  row.wall_ms = r.wall_ms;
  return row;
}

EvalResult eval_all_trees(const EvalConfig& cfg) {
  if (!is_forest_algorithm(cfg.algorithm))
    throw Error(ErrorKind::InvalidArgument, "all-trees takes forest estimators only");
  const std::uint32_t n = cfg.gen.n;
  ForestConfig fc;
  fc.epsilon = cfg.estimate.epsilon;
  fc.delta = cfg.estimate.delta;
  EvalResult res;
  std::uint64_t trial = 0;
  for_each_tree(n, [&](const Graph& g) {
    const GroundTruth t = exact_params(g);
    const EstimateReport r =
        make_forest_report(parameter_of(cfg.algorithm), passes_of(cfg.algorithm), n, counts_from_truth(t), fc);
    res.rows.push_back(make_row(cfg.algorithm, trial++, 0, r, truth_for(cfg.algorithm, t)));
  });
  return res;
}

void summarise(EvalResult& res) {
  EvalSummary& s = res.summary;
  s.trials = res.rows.size();
  std::size_t ok = 0;
  double ratio_sum = 0;
  for (const TrialRow& row : res.rows) {
    ok += row.success ? 1 : 0;
    ratio_sum += row.ratio;
    s.max_ratio = std::max(s.max_ratio, row.ratio);
    s.wall_ms += row.wall_ms;
    s.peak_space_bytes = std::max(s.peak_space_bytes, row.space_bytes);
  }
  if (s.trials != 0) {
    s.success_rate = static_cast<double>(ok) / static_cast<double>(s.trials);
    s.mean_ratio = ratio_sum / static_cast<double>(s.trials);
  }
}

}  // namespace

const char* to_string(Algorithm a) {
  for (const auto& e : kAlgorithms)
    if (e.algorithm == a) return e.name;
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& e : kAlgorithms)
    if (name == e.name) return e.algorithm;
  throw Error(ErrorKind::InvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

Parameter parameter_of(Algorithm a) {
  switch (a) {
    case Algorithm::Beta1p:
    case Algorithm::Beta2p: return Parameter::Beta;
    case Algorithm::Gamma1p:
    case Algorithm::Gamma2p: return Parameter::Gamma;
    case Algorithm::Phi1p:
    case Algorithm::Phi2p: return Parameter::Phi;
    default: return Parameter::Lambda;
  }
}

int passes_of(Algorithm a) {
  return a == Algorithm::Beta2p || a == Algorithm::Gamma2p || a == Algorithm::Phi2p ? 2 : 1;
}

EstimateReport run_estimator(Algorithm a, const StreamSequence& stream, const EstimateOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  EstimateReport r;
  if (is_forest_algorithm(a)) {
    ForestConfig fc;
    fc.epsilon = opt.epsilon;
    fc.delta = opt.delta;
    fc.seed = opt.seed;
    switch (a) {
      case Algorithm::Beta1p: r = estimate_beta_onepass(stream, fc).report; break;
      case Algorithm::Beta2p: r = estimate_beta_twopass(stream, fc).report; break;
      case Algorithm::Gamma1p: r = estimate_gamma_onepass(stream, fc).report; break;
      case Algorithm::Gamma2p: r = estimate_gamma_twopass(stream, fc).report; break;
      case Algorithm::Phi1p: r = estimate_phi_onepass(stream, fc).report; break;
      default: r = estimate_phi_twopass(stream, fc).report; break;
    }
  } else {
    const CwConfig cfg = cw_config(stream, opt);
    switch (a) {
      case Algorithm::CwBase: r = make_lambda_report(cw_base(stream, cfg), cfg, stream.n(), "cw-base", 1); break;
      case Algorithm::CwOnline: {
        const CwSolution sol = cw_online(stream, cfg.epsilon, cfg.seed);
        CwResult res;
        res.estimate = static_cast<double>(sol.size());
        res.retained = sol.size();
        res.sample_size = stream.n();
        res.space_bytes = sol.space_bytes;
        r = make_lambda_report(res, cfg, stream.n(), "cw-online", 1);
        break;
      }
      case Algorithm::CwUnbounded:
        r = make_lambda_report(cw_unbounded(stream, cfg, opt.c_prime), cfg, stream.n(), "cw-unbounded", 1);
        break;
      default:
        r = make_lambda_report(cw_vertex_random(stream, cfg), cfg, stream.n(), "cw-vertex", 1);
        if (stream.order() != StreamOrder::Random) r.add_flag("order_unverified");
        break;
    }
    if (!opt.avg_degree) r.add_flag("avg_degree_from_stream");
    r.delta = opt.delta;
  }
  if (opt.timing) r.wall_ms = elapsed_ms(start);
  return r;
}

Generated generate(const GenSpec& spec) {
  if (spec.shape == "all-trees") throw Error(ErrorKind::InvalidShapeParams, "all-trees is an eval-only shape");
  if (spec.shape == "random-graph") {
    if (spec.n < 2) throw Error(ErrorKind::InvalidShapeParams, "random-graph needs n >= 2");
    const std::uint32_t cap = spec.max_degree == 0 ? spec.n - 1 : spec.max_degree;
    const auto edges = random_sparse_graph(spec.n, spec.avg_degree, cap, spec.seed);
    StreamOptions so{spec.order, spec.model, spec.deletion_rate, spec.seed};
    return {stream_from_edges(spec.n, edges, so), ground_truth(Graph::from_edges(spec.n, edges))};
  }
  ForestSpec fs;
  fs.shape = parse_shape(spec.shape);
  fs.n = spec.n;
  fs.r = spec.r;
  fs.order = spec.order;
  fs.model = spec.model;
  fs.deletion_rate = spec.deletion_rate;
  fs.seed = spec.seed;
  return generate_forest(fs);
}

double truth_for(Algorithm a, const GroundTruth& t) {
  const Parameter p = parameter_of(a);
  if (p == Parameter::Lambda) return t.lambda.convert_to<double>();
  const std::optional<std::int64_t>& v = p == Parameter::Beta ? t.beta : p == Parameter::Gamma ? t.gamma : t.phi;
  if (!v) throw Error(ErrorKind::NotAForest, "no forest ground truth for this graph");
  return static_cast<double>(*v);
}

bool trial_success(Algorithm a, const EstimateReport& r, double truth) {
  if (r.degraded()) return false;
  const double eps = r.epsilon;
  const double point = r.point;
  if (parameter_of(a) == Parameter::Lambda) return std::abs(point - truth) <= 3.0 * eps * truth;
  if (passes_of(a) == 1) return (1 - eps) * r.lower <= truth && truth <= (1 + eps) * r.upper;
  switch (parameter_of(a)) {
    case Parameter::Beta: return point / (1 + eps) <= truth && truth <= 4.0 / 3.0 * (1 + eps) * point;
    case Parameter::Gamma: return truth <= point / (1 - eps) && point <= 2.0 * (1 + eps) * truth;
    default: return truth <= point / (1 - eps) && point <= 1.5 * (1 + eps) * truth;
  }
}

double trial_ratio(double point, double truth) {
  if (point == truth) return 1.0;
  if (point <= 0 || truth <= 0) return std::numeric_limits<double>::infinity();
  return std::max(point / truth, truth / point);
}

EvalResult run_eval(const EvalConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorKind::InvalidArgument, "eval needs trials >= 1");
  const auto start = std::chrono::steady_clock::now();
  EvalResult res;
  if (cfg.gen.shape == "all-trees") {
    res = eval_all_trees(cfg);
  } else {
    res.rows.resize(cfg.trials);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (std::uint64_t t = next++; t < cfg.trials; t = next++) {
        try {
          const std::uint64_t seed = detail::mix(cfg.gen.seed, t);
          GenSpec gs = cfg.gen;
          gs.seed = seed;
          const Generated g = generate(gs);
          const double truth = truth_for(cfg.algorithm, g.truth);
          EstimateOptions eo = cfg.estimate;
          eo.seed = seed;
          try {
            res.rows[t] = make_row(cfg.algorithm, t, seed, run_estimator(cfg.algorithm, g.stream, eo), truth);
          } catch (const Error& e) {
            if (exit_code_for(e.kind()) != 2) throw;
            TrialRow row;
            row.trial = t;
            row.seed = seed;
            row.truth = truth;
            row.ratio = trial_ratio(0, truth);
            row.status = to_string(e.kind());
            res.rows[t] = row;
          }
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = cfg.trials;
        }
      }
    };
    const unsigned workers = std::min<std::uint64_t>(worker_count(cfg.threads), cfg.trials);
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  summarise(res);
  res.summary.wall_ms = cfg.estimate.timing ? elapsed_ms(start) : 0.0;
  return res;
}

void write_eval_csv(std::ostream& out, const EvalResult& result) {
  out << "# schema=" << kEvalSchema << '\n';
  out << "trial,seed,truth,estimate,lower,upper,ratio,success,status,space_bytes,wall_ms\n";
  for (const TrialRow& r : result.rows) {
    out << r.trial << ',' << r.seed << ',' << fmt(r.truth) << ',' << fmt(r.estimate) << ',' << fmt(r.lower) << ','
        << fmt(r.upper) << ',' << fmt(r.ratio) << ',' << (r.success ? 1 : 0) << ',' << r.status << ','
        << r.space_bytes << ',' << fmt(r.wall_ms) << '\n';
  }
  const EvalSummary& s = result.summary;
  out << "# summary\n";
  out << "trials,success_rate,mean_ratio,max_ratio,wall_ms,peak_space_bytes\n";
  out << s.trials << ',' << fmt(s.success_rate) << ',' << fmt(s.mean_ratio) << ',' << fmt(s.max_ratio) << ','
      << fmt(s.wall_ms) << ',' << s.peak_space_bytes << '\n';
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AllInstancesAborted:
    case ErrorKind::CounterOverflowAbort:
    case ErrorKind::ReplayAborted: return 2;
    default: return 1;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sublinear-space graph stream estimators"};
  app.require_subcommand(1);

  GenSpec gen;
  std::string order = "arbitrary";
  std::string model = "edge";
  std::string out_path;
  std::string stream_path;
  std::string alg;
  EstimateOptions est;
  std::optional<double> avg_degree;
  std::uint64_t trials = 30;

  auto add_gen_options = [&](CLI::App* sub) {
    sub->add_option("--shape", gen.shape,
                    "random-tree, path, spider-p4, star-with-leaves, p3-spider, random-forest, caterpillar, "
                    "random-graph" + std::string(sub->get_name() == "eval" ? ", all-trees" : ""))
        ->capture_default_str();
    sub->add_option("--n", gen.n, "vertex count (derived from --r for fixed shapes)");
    sub->add_option("--r", gen.r, "shape parameter");
    sub->add_option("--order", order, "arbitrary or random")->capture_default_str();
    sub->add_option("--model", model, "edge or vertex")->capture_default_str();
    sub->add_option("--deletion-rate", gen.deletion_rate, "decoy insert/delete pairs per edge")->capture_default_str();
    sub->add_option("--avg-degree", avg_degree, "random-graph average degree; d̄ for the Caro-Wei estimators");
    sub->add_option("--max-degree", gen.max_degree, "random-graph degree cap (0: none)");
  };
  auto add_estimate_options = [&](CLI::App* sub) {
    sub->add_option("--alg", alg, "cw-base, cw-online, cw-unbounded, cw-vertex, beta-1p, beta-2p, gamma-1p, "
                                  "gamma-2p, phi-1p, phi-2p")
        ->required();
    sub->add_option("--eps", est.epsilon, "accuracy")->capture_default_str();
    sub->add_option("--delta", est.delta, "failure probability")->capture_default_str();
    sub->add_option("--c-prime", est.c_prime, "cw-unbounded repetition constant")->capture_default_str();
    sub->add_flag("--timing", est.timing, "report wall time (output is then not reproducible)");
  };

  CLI::App* cmd_gen = app.add_subcommand("gen", "generate a stream and its ground truth");
  add_gen_options(cmd_gen);
  cmd_gen->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  cmd_gen->add_option("--out", out_path, "stream path; the truth goes to PATH.truth.json");

  CLI::App* cmd_exact = app.add_subcommand("exact", "exact parameters of a stream's final graph");
  cmd_exact->add_option("--stream", stream_path, "stream file")->required();

  CLI::App* cmd_est = app.add_subcommand("estimate", "run one estimator on a stream file");
  add_estimate_options(cmd_est);
  cmd_est->add_option("--stream", stream_path, "stream file")->required();
  cmd_est->add_option("--seed", est.seed, "estimator seed")->capture_default_str();
  cmd_est->add_option("--avg-degree", avg_degree, "d̄ for the Caro-Wei estimators (default: exact 2m/n)");

  CLI::App* cmd_eval = app.add_subcommand("eval", "Monte-Carlo sweep against the oracle, as CSV");
  add_gen_options(cmd_eval);
  add_estimate_options(cmd_eval);
  cmd_eval->add_option("--seed", gen.seed, "base seed; trial t uses a seed derived from (seed, t)")
      ->capture_default_str();
  cmd_eval->add_option("--trials", trials, "trial count")->capture_default_str();
  cmd_eval->add_option("--out", out_path, "CSV path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    gen.order = parse_order(order);
    gen.model = parse_model(model);
    if (avg_degree) gen.avg_degree = *avg_degree;

    if (*cmd_gen) {
      const Generated g = generate(gen);
      const std::string text = serialize_stream(g.stream);
      if (out_path.empty()) {
        out << text;
      } else {
        write_file(out_path, text);
        write_file(out_path + ".truth.json", to_json(g.truth) + "\n");
      }
      return 0;
    }
    if (*cmd_exact) {
      const StreamSequence s = parse_stream(read_file(stream_path));
      out << to_json(ground_truth(Graph::from_stream(s))) << '\n';
      return 0;
    }
    const Algorithm a = parse_algorithm(alg);
    if (*cmd_est) {
      const StreamSequence s = parse_stream(read_file(stream_path));
      if (is_forest_algorithm(a) && !is_forest(Graph::from_stream(s)))
        throw Error(ErrorKind::NotAForest, "forest estimators need an acyclic final graph");
      est.avg_degree = avg_degree;
      const EstimateReport r = run_estimator(a, s, est);
      out << to_json(r) << '\n';
      return r.degraded() ? 2 : 0;
    }
    EvalConfig ec;
    ec.algorithm = a;
    ec.gen = gen;
    ec.estimate = est;
    ec.estimate.avg_degree = avg_degree;
    ec.trials = trials;
    const EvalResult res = run_eval(ec);
    if (out_path.empty()) {
      write_eval_csv(out, res);
    } else {
      std::ostringstream ss;
      write_eval_csv(ss, res);
      write_file(out_path, ss.str());
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

}  // namespace sparsestream::cli
