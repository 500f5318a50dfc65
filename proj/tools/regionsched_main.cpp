#include "regionsched/adversaries.hpp"
#include "regionsched/bench.hpp"
#include "regionsched/instance_io.hpp"
#include "regionsched/oracle.hpp"
#include "regionsched/scheduler.hpp"
#include "regionsched/trace.hpp"
#include "regionsched/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using nlohmann::ordered_json;
using namespace rsched;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInvariant = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rat flag_rational(const std::string& text, const char* flag) {
  auto parsed = try_parse_rational(text);
  if (!parsed) throw UsageError(std::string(flag) + " expects a rational like 3/4");
  return *parsed;
}

Instance read_instance(const std::string& path) {
  if (path.empty() || path == "-") return parse_instance_stream(std::cin);
  return load_instance_file(path);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot open output file: " + out_path);
  out << text << "\n";
}

struct ParamFlags {
  std::string model = "none";
  std::string epsilon, delta, alpha, beta;

  void attach(CLI::App* cmd, bool epsilon_required) {
    cmd->add_option("--model", model, "commitment model: none|admission|delta")
        ->check(CLI::IsMember({"none", "admission", "delta"}));
    auto* eps = cmd->add_option("--epsilon", epsilon, "slackness parameter (rational)");
    if (epsilon_required) eps->required();
    cmd->add_option("--delta", delta, "delta-commitment parameter (rational)");
    cmd->add_option("--alpha", alpha, "override alpha (rational)");
    cmd->add_option("--beta", beta, "override beta (rational)");
  }

  AlgoParams build(const Rat& eps) const {
    auto parsed_model = commit_model_from_string(model);
    if (!parsed_model) throw UsageError("unknown model: " + model);
    std::optional<Rat> d;
    if (!delta.empty()) d = flag_rational(delta, "--delta");
    if (d && *parsed_model != CommitModel::DeltaCommitment) {
      throw UsageError("--delta only applies to --model delta");
    }
    AlgoParams params = default_params(*parsed_model, eps, d);
    if (!alpha.empty()) params.alpha = flag_rational(alpha, "--alpha");
    if (!beta.empty()) params.beta = flag_rational(beta, "--beta");
    if (params.alpha < 1) throw ParamDomainError("alpha must be >= 1");
    if (!(params.beta > 0 && params.beta < 1)) {
      throw ParamDomainError("beta must be in (0,1)");
    }
    return params;
  }

  Rat effective_epsilon(const std::optional<Rat>& fallback) const {
    if (!epsilon.empty()) return flag_rational(epsilon, "--epsilon");
    if (fallback) return *fallback;
    throw UsageError("--epsilon is required here");
  }
};

// Generator parameters come either from --params JSON or dedicated flags.
class GenParams {
 public:
  GenParams(const std::string& params_json, const ParamFlags& flags, int n_flag,
            int max_levels_flag, std::uint64_t seed_flag, bool seed_given)
      : flags_(flags), n_flag_(n_flag), max_levels_flag_(max_levels_flag),
        seed_flag_(seed_flag), seed_given_(seed_given) {
    if (!params_json.empty()) {
      try {
        doc_ = ordered_json::parse(params_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("--params is not valid JSON: ") + e.what());
      }
      if (!doc_.is_object()) throw UsageError("--params must be a JSON object");
    } else {
      doc_ = ordered_json::object();
    }
  }

  Rat rational(const char* key, const char* flag_value = nullptr) const {
    if (flag_value && *flag_value) return flag_rational(flag_value, key);
    if (!doc_.contains(key)) throw UsageError(std::string("missing parameter '") + key + "'");
    const auto& node = doc_.at(key);
    if (node.is_number_integer()) return Rat(node.get<long long>());
    if (node.is_string()) return flag_rational(node.get<std::string>(), key);
    throw UsageError(std::string("parameter '") + key + "' must be a rational");
  }

  Rat epsilon() const {
    if (!flags_.epsilon.empty()) return flag_rational(flags_.epsilon, "--epsilon");
    return rational("epsilon");
  }

  std::optional<Rat> optional_rational(const char* key) const {
    if (!doc_.contains(key)) return std::nullopt;
    return rational(key);
  }

  long integer(const char* key, std::optional<long> fallback = std::nullopt) const {
    if (doc_.contains(key)) {
      const auto& node = doc_.at(key);
      if (node.is_number_integer()) return node.get<long>();
      if (node.is_string()) {
        try {
          std::size_t used = 0;
          std::string text = node.get<std::string>();
          long value = std::stol(text, &used);
          if (used == text.size()) return value;
        } catch (...) {
        }
      }
      throw UsageError(std::string("parameter '") + key + "' must be an integer");
    }
    if (fallback) return *fallback;
    throw UsageError(std::string("missing parameter '") + key + "'");
  }

  int n() const { return n_flag_ >= 0 ? n_flag_ : static_cast<int>(integer("n", 10)); }
  int max_levels() const {
    if (max_levels_flag_ > 0) return max_levels_flag_;
    return static_cast<int>(integer("max_levels", 4));
  }
  std::uint64_t seed() const {
    if (seed_given_) return seed_flag_;
    return static_cast<std::uint64_t>(integer("seed", 0));
  }
  const ParamFlags& flags() const { return flags_; }

 private:
  ordered_json doc_;
  const ParamFlags& flags_;
  int n_flag_;
  int max_levels_flag_;
  std::uint64_t seed_flag_;
  bool seed_given_;
};

ordered_json instance_with_header(const Instance& instance, const char* family,
                                  std::initializer_list<std::pair<const char*, ordered_json>> extra = {}) {
  ordered_json doc;
  doc["family"] = family;
  for (const auto& [key, value] : extra) doc[key] = value;
  ordered_json body = ordered_json::parse(serialize_instance(instance));
  doc["epsilon"] = body.at("epsilon");
  doc["jobs"] = body.at("jobs");
  return doc;
}

std::string run_summary_csv(const Trace& trace) {
  std::ostringstream out;
  out << "model,alpha,beta,delta,epsilon,released,admitted,on_time,late,commit_broken\n";
  out << to_string(trace.params.model) << ',' << to_string(trace.params.alpha) << ','
      << to_string(trace.params.beta) << ',' << to_string(trace.params.delta) << ','
      << to_string(trace.epsilon) << ',' << trace.summary.released << ','
      << trace.summary.admitted << ',' << trace.summary.completed_on_time << ','
      << trace.summary.completed_late << ',' << trace.summary.commitments_broken;
  return out.str();
}

int do_gen(const std::string& family, const GenParams& gp, const std::string& out_path) {
  if (family == "random") {
    Rat horizon = gp.optional_rational("horizon").value_or(Rat(10));
    Instance instance = gen_random_slack(gp.n(), gp.epsilon(), horizon, gp.seed());
    emit(instance_with_header(instance, "random",
                              {{"seed", static_cast<std::int64_t>(gp.seed())}})
             .dump(),
         out_path);
    return kExitOk;
  }
  if (family == "alpha_beta_lb") {
    Instance instance = gen_alpha_beta_lb(gp.epsilon(),
                                          gp.rational("alpha", gp.flags().alpha.c_str()),
                                          gp.rational("beta", gp.flags().beta.c_str()),
                                          gp.rational("phi"));
    emit(instance_with_header(instance, "alpha_beta_lb").dump(), out_path);
    return kExitOk;
  }
  if (family == "commit_tight") {
    CommitTightFamily family_out = gen_commit_tight_family(
        gp.epsilon(), gp.rational("delta", gp.flags().delta.c_str()),
        gp.rational("alpha", gp.flags().alpha.c_str()),
        gp.rational("beta", gp.flags().beta.c_str()),
        static_cast<int>(gp.integer("m", 3)), gp.rational("phi"));
    emit(instance_with_header(family_out.instance, "commit_tight",
                              {{"c", family_out.c}})
             .dump(),
         out_path);
    return kExitOk;
  }
  if (family == "waves") {
    auto prefixes = gen_waves(gp.epsilon(), gp.rational("gamma"),
                              static_cast<int>(gp.integer("k", 3)));
    ordered_json doc;
    doc["family"] = "waves";
    doc["release_indexing"] = kWaveReleaseIndexing;
    doc["prefixes"] = ordered_json::array();
    for (const auto& instance : prefixes) {
      doc["prefixes"].push_back(ordered_json::parse(serialize_instance(instance)));
    }
    emit(doc.dump(), out_path);
    return kExitOk;
  }
  if (family == "weighted_chain") {
    Instance instance = gen_weighted_chain(gp.epsilon(),
                                           gp.rational("delta", gp.flags().delta.c_str()),
                                           static_cast<int>(gp.integer("n", 5)),
                                           gp.rational("c"));
    emit(instance_with_header(instance, "weighted_chain").dump(), out_path);
    return kExitOk;
  }
  if (family == "unitweight_commit_lb") {
    Instance instance = gen_unitweight_commit_lb(gp.epsilon());
    emit(instance_with_header(instance, "unitweight_commit_lb").dump(), out_path);
    return kExitOk;
  }
  if (family == "levels") {
    Rat eps = gp.epsilon();
    AlgoParams params = gp.flags().build(eps);
    RegionScheduler scheduler(params, eps);
    AdversaryOutcome outcome = gen_levels_adaptive(eps, gp.max_levels(), scheduler);
    ordered_json doc;
    doc["family"] = "levels";
    doc["max_levels"] = gp.max_levels();
    doc["scheduler"] = {{"model", to_string(params.model)},
                        {"alpha", to_string(params.alpha)},
                        {"beta", to_string(params.beta)},
                        {"delta", to_string(params.delta)}};
    ordered_json body = ordered_json::parse(adversary_outcome_to_json(outcome));
    doc["instance"] = body.at("instance");
    doc["prefixes"] = body.at("prefixes");
    doc["realized_ratio"] = body.at("realized_ratio");
    emit(doc.dump(), out_path);
    return kExitOk;
  }
  throw UsageError("unknown family: " + family);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"region algorithm scheduler: online deadline scheduling harness"};
  app.require_subcommand(1);

  std::string instance_path, trace_path, out_path, format = "json", params_json, family;
  int n_flag = -1, seeds = 100, max_levels_flag = 0, threads = 0;
  std::uint64_t seed = 0;
  bool weighted = false;
  std::string horizon_flag;
  ParamFlags run_flags, bench_flags, gen_flags;

  auto* cmd_run = app.add_subcommand("run", "simulate one instance, emit the trace");
  cmd_run->add_option("--instance", instance_path, "instance JSON path ('-' = stdin)");
  cmd_run->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  cmd_run->add_option("--out", out_path, "output path (default stdout)");
  run_flags.attach(cmd_run, false);

  auto* cmd_oracle = app.add_subcommand("oracle", "exact offline optimum");
  cmd_oracle->add_option("--instance", instance_path, "instance JSON path ('-' = stdin)");
  cmd_oracle->add_flag("--weighted", weighted, "maximize total weight instead of count");
  cmd_oracle->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  cmd_oracle->add_option("--out", out_path);

  auto* cmd_gen = app.add_subcommand("gen", "emit an instance family");
  cmd_gen->add_option("--family", family,
                      "random|alpha_beta_lb|commit_tight|waves|weighted_chain|"
                      "unitweight_commit_lb|levels")
      ->required();
  cmd_gen->add_option("--params", params_json, "family parameters as JSON");
  cmd_gen->add_option("--n", n_flag, "job count (random/weighted_chain)");
  cmd_gen->add_option("--max-levels", max_levels_flag, "levels adversary depth");
  auto* gen_seed = cmd_gen->add_option("--seed", seed, "generator seed");
  cmd_gen->add_option("--out", out_path);
  gen_flags.attach(cmd_gen, false);

  auto* cmd_bench = app.add_subcommand("bench", "seed sweep with invariant checks");
  std::string bench_family = "random";
  cmd_bench->add_option("--family", bench_family)->check(CLI::IsMember({"random"}));
  cmd_bench->add_option("--n", n_flag, "jobs per instance (-1 varies by seed)");
  cmd_bench->add_option("--seeds", seeds, "number of seeded instances");
  cmd_bench->add_option("--seed", seed, "base seed");
  cmd_bench->add_option("--horizon", horizon_flag, "release horizon (rational)");
  cmd_bench->add_option("--threads", threads, "worker threads (0 = auto)");
  cmd_bench->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  cmd_bench->add_option("--out", out_path);
  bench_flags.attach(cmd_bench, true);

  auto* cmd_check = app.add_subcommand("check", "verify a trace file against invariants");
  cmd_check->add_option("--instance", instance_path)->required();
  cmd_check->add_option("--trace", trace_path, "trace JSON path")->required();
  cmd_check->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_run->parsed()) {
      Instance instance = read_instance(instance_path);
      Rat eps = run_flags.effective_epsilon(instance.epsilon);
      AlgoParams params = run_flags.build(eps);
      Trace trace = run(instance, params);
      emit(format == "csv" ? run_summary_csv(trace) : trace_to_json(trace), out_path);
      return kExitOk;
    }
    if (cmd_oracle->parsed()) {
      Instance instance = read_instance(instance_path);
      OracleResult result = max_throughput_subset(instance, weighted);
      if (format == "csv") {
        std::ostringstream out;
        out << "objective,value,subset\n"
            << (result.weighted ? "weight" : "count") << ',' << to_string(result.value)
            << ',';
        for (std::size_t i = 0; i < result.subset.size(); ++i) {
          out << (i ? " " : "") << result.subset[i];
        }
        emit(out.str(), out_path);
      } else {
        emit(oracle_result_to_json(result), out_path);
      }
      return kExitOk;
    }
    if (cmd_gen->parsed()) {
      GenParams gp(params_json, gen_flags, n_flag, max_levels_flag, seed,
                   gen_seed->count() > 0);
      return do_gen(family, gp, out_path);
    }
    if (cmd_bench->parsed()) {
      BenchSpec spec;
      spec.n = n_flag;
      spec.seeds = seeds;
      spec.base_seed = seed;
      spec.threads = threads;
      if (!horizon_flag.empty()) spec.horizon = flag_rational(horizon_flag, "--horizon");
      spec.epsilon = bench_flags.effective_epsilon(std::nullopt);
      spec.params = bench_flags.build(spec.epsilon);
      ExperimentReport report = bench_random(spec);
      emit(format == "csv" ? report_to_csv(report) : report_to_json(report), out_path);
      return kExitOk;
    }
    if (cmd_check->parsed()) {
      Instance instance = read_instance(instance_path);
      std::ifstream in(trace_path);
      if (!in) throw Error("cannot open trace file: " + trace_path);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      Trace trace = trace_from_json(buffer.str());
      auto violations = verify_trace(trace, instance, trace.params);
      emit(violations_to_json(violations), out_path);
      return violations.empty() ? kExitOk : kExitInvariant;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
