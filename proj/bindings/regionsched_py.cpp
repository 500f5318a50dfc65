#include "regionsched/adversaries.hpp"
#include "regionsched/bench.hpp"
#include "regionsched/instance_io.hpp"
#include "regionsched/oracle.hpp"
#include "regionsched/scheduler.hpp"
#include "regionsched/trace.hpp"
#include "regionsched/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

namespace py = pybind11;
using namespace rsched;

namespace {

Rat rat_arg(const std::string& text, const char* name) {
  auto parsed = try_parse_rational(text);
  if (!parsed) throw ParamDomainError(std::string(name) + ": not a rational: " + text);
  return *parsed;
}

AlgoParams build_params(const std::string& model, const std::string& epsilon,
                        const std::optional<std::string>& delta,
                        const std::optional<std::string>& alpha,
                        const std::optional<std::string>& beta) {
  auto parsed_model = commit_model_from_string(model);
  if (!parsed_model) throw ParamDomainError("unknown model: " + model);
  std::optional<Rat> d;
  if (delta) d = rat_arg(*delta, "delta");
  AlgoParams params = default_params(*parsed_model, rat_arg(epsilon, "epsilon"), d);
  if (alpha) params.alpha = rat_arg(*alpha, "alpha");
  if (beta) params.beta = rat_arg(*beta, "beta");
  return params;
}

}  // namespace

PYBIND11_MODULE(_regionsched, m) {
  m.doc() = "region algorithm scheduler: C++ core bindings (JSON-string API)";

  // Translators run newest-first: the base class goes in first so the
  // derived registrations below take precedence.
  py::register_exception<Error>(m, "SchedulerError");
  py::register_exception<ParamDomainError>(m, "ParamDomainError");
  py::register_exception<CapExceededError>(m, "CapExceeded");

  m.def("validate_instance",
        [](const std::string& text) { return serialize_instance(parse_instance(text)); },
        py::arg("instance_json"),
        "Parse, validate and canonicalize an instance; returns canonical JSON.");

  m.def("slack_violations", [](const std::string& text) {
    return parse_instance(text).slack_violations;
  });

  m.def("default_params",
        [](const std::string& model, const std::string& epsilon,
           const std::optional<std::string>& delta) {
          auto parsed_model = commit_model_from_string(model);
          if (!parsed_model) throw ParamDomainError("unknown model: " + model);
          std::optional<Rat> d;
          if (delta) d = rat_arg(*delta, "delta");
          AlgoParams params = default_params(*parsed_model, rat_arg(epsilon, "epsilon"), d);
          py::dict out;
          out["model"] = to_string(params.model);
          out["alpha"] = to_string(params.alpha);
          out["beta"] = to_string(params.beta);
          out["delta"] = to_string(params.delta);
          return out;
        },
        py::arg("model"), py::arg("epsilon"), py::arg("delta") = py::none());

  m.def("check_condition1",
        [](const std::string& alpha, const std::string& beta, const std::string& delta) {
          return check_condition1(rat_arg(alpha, "alpha"), rat_arg(beta, "beta"),
                                  rat_arg(delta, "delta"));
        });

  m.def("condition1_value",
        [](const std::string& alpha, const std::string& beta, const std::string& delta) {
          return to_string(condition1_value(rat_arg(alpha, "alpha"), rat_arg(beta, "beta"),
                                            rat_arg(delta, "delta")));
        });

  m.def("run",
        [](const std::string& instance_json, const std::string& model,
           const std::optional<std::string>& epsilon,
           const std::optional<std::string>& delta,
           const std::optional<std::string>& alpha,
           const std::optional<std::string>& beta) {
          Instance instance = parse_instance(instance_json);
          std::string eps = epsilon ? *epsilon : to_string(instance.epsilon);
          AlgoParams params = build_params(model, eps, delta, alpha, beta);
          return trace_to_json(run(instance, params));
        },
        py::arg("instance_json"), py::arg("model") = "none",
        py::arg("epsilon") = py::none(), py::arg("delta") = py::none(),
        py::arg("alpha") = py::none(), py::arg("beta") = py::none(),
        "Simulate one instance; returns the trace as JSON.");

  m.def("oracle",
        [](const std::string& instance_json, bool weighted, std::optional<int> cap) {
          Instance instance = parse_instance(instance_json);
          return oracle_result_to_json(max_throughput_subset(instance, weighted, cap));
        },
        py::arg("instance_json"), py::arg("weighted") = false,
        py::arg("cap") = py::none());

  m.def("verify",
        [](const std::string& trace_json, const std::string& instance_json) {
          Trace trace = trace_from_json(trace_json);
          Instance instance = parse_instance(instance_json);
          return violations_to_json(verify_trace(trace, instance, trace.params));
        },
        py::arg("trace_json"), py::arg("instance_json"),
        "Check every engine invariant; returns a JSON list of violations.");

  m.def("competitive_ratio",
        [](const std::string& instance_json, const std::string& model,
           const std::optional<std::string>& epsilon,
           const std::optional<std::string>& delta) {
          Instance instance = parse_instance(instance_json);
          std::string eps = epsilon ? *epsilon : to_string(instance.epsilon);
          AlgoParams params = build_params(model, eps, delta, std::nullopt, std::nullopt);
          RatioResult result = competitive_ratio(instance, params);
          py::dict out;
          out["opt"] = to_string(result.opt);
          out["on_time"] = result.on_time;
          out["ratio"] = to_string(result.ratio);
          out["flagged"] = result.flagged;
          return out;
        },
        py::arg("instance_json"), py::arg("model") = "none",
        py::arg("epsilon") = py::none(), py::arg("delta") = py::none());

  m.def("gen_random_slack",
        [](int n, const std::string& epsilon, const std::string& horizon,
           std::uint64_t seed) {
          return serialize_instance(
              gen_random_slack(n, rat_arg(epsilon, "epsilon"), rat_arg(horizon, "horizon"), seed));
        },
        py::arg("n"), py::arg("epsilon"), py::arg("horizon") = "10", py::arg("seed") = 0);

  m.def("gen_alpha_beta_lb",
        [](const std::string& epsilon, const std::string& alpha, const std::string& beta,
           const std::string& phi) {
          return serialize_instance(gen_alpha_beta_lb(
              rat_arg(epsilon, "epsilon"), rat_arg(alpha, "alpha"), rat_arg(beta, "beta"),
              rat_arg(phi, "phi")));
        },
        py::arg("epsilon"), py::arg("alpha"), py::arg("beta"), py::arg("phi"));

  m.def("gen_levels",
        [](const std::string& epsilon, int max_levels, const std::string& model) {
          Rat eps = rat_arg(epsilon, "epsilon");
          auto parsed_model = commit_model_from_string(model);
          if (!parsed_model) throw ParamDomainError("unknown model: " + model);
          AlgoParams params = default_params(*parsed_model, eps);
          RegionScheduler scheduler(params, eps);
          return adversary_outcome_to_json(gen_levels_adaptive(eps, max_levels, scheduler));
        },
        py::arg("epsilon"), py::arg("max_levels") = 4, py::arg("model") = "none");

  m.def("bench_random",
        [](int n, int seeds, std::uint64_t base_seed, const std::string& model,
           const std::string& epsilon, const std::optional<std::string>& delta,
           int threads) {
          BenchSpec spec;
          spec.n = n;
          spec.seeds = seeds;
          spec.base_seed = base_seed;
          spec.threads = threads;
          spec.epsilon = rat_arg(epsilon, "epsilon");
          spec.params = build_params(model, epsilon, delta, std::nullopt, std::nullopt);
          return report_to_json(bench_random(spec));
        },
        py::arg("n") = 10, py::arg("seeds") = 100, py::arg("base_seed") = 0,
        py::arg("model") = "none", py::arg("epsilon") = "1",
        py::arg("delta") = py::none(), py::arg("threads") = 0);
}
