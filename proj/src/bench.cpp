#include "regionsched/bench.hpp"

#include "regionsched/oracle.hpp"
#include "regionsched/scheduler.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace rsched {

RatioResult competitive_ratio(const Instance& instance, const AlgoParams& params) {
  Trace trace = run(instance, params);
  OracleResult opt = max_throughput_subset(instance);

  RatioResult result;
  result.opt = opt.value;
  result.on_time = trace.summary.completed_on_time;
  if (result.on_time > 0) {
    result.ratio = result.opt / result.on_time;
  } else if (result.opt > 0) {
    result.ratio = result.opt;
    result.flagged = true;
  } else {
    result.ratio = 1;
  }
  return result;
}

namespace {

ExperimentRow bench_one(const BenchSpec& spec, std::uint64_t seed) {
  int n = spec.n >= 0 ? spec.n : static_cast<int>(seed % 41);
  Instance instance = gen_random_slack(n, spec.epsilon, spec.horizon, seed);
  Trace trace = run(instance, spec.params);

  ExperimentRow row;
  row.instance_id = static_cast<std::int64_t>(seed);
  row.n = n;
  row.model = to_string(spec.params.model);
  row.alpha = spec.params.alpha;
  row.beta = spec.params.beta;
  row.delta = spec.params.delta;
  row.epsilon = instance.epsilon;
  row.admitted = trace.summary.admitted;
  row.on_time = trace.summary.completed_on_time;
  row.lambda = lambda_bound(spec.params, instance.epsilon);
  row.violations = static_cast<int>(verify_trace(trace, instance, spec.params).size());

  if (spec.with_oracle) {
    try {
      OracleResult opt = max_throughput_subset(instance);
      row.opt = opt.value;
      if (row.on_time > 0) {
        row.ratio = *row.opt / row.on_time;
      } else if (*row.opt > 0) {
        row.ratio = *row.opt;
        row.ratio_flagged = true;
      } else {
        row.ratio = Rat(1);
      }
      row.lambda_ok = *row.opt <= (row.lambda + 1) * row.admitted;
    } catch (const CapExceededError&) {
      // leave opt empty
    }
  }
  return row;
}

}  // namespace

ExperimentReport bench_random(const BenchSpec& spec) {
  ExperimentReport report;
  report.rows.resize(static_cast<std::size_t>(spec.seeds));

  int threads = spec.threads > 0
                    ? spec.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, std::max(1, spec.seeds));

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int index = next.fetch_add(1);
      if (index >= spec.seeds) return;
      report.rows[static_cast<std::size_t>(index)] =
          bench_one(spec, spec.base_seed + static_cast<std::uint64_t>(index));
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> crew;
    for (int i = 0; i < threads; ++i) crew.emplace_back(worker);
    for (auto& t : crew) t.join();
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const ExperimentRow& a, const ExperimentRow& b) {
              return a.instance_id < b.instance_id;
            });

  Rat ratio_sum{0};
  int ratio_count = 0;
  for (const auto& row : report.rows) {
    report.violation_total += row.violations;
    if (row.lambda_ok && !*row.lambda_ok) ++report.lambda_violations;
    if (!row.opt) ++report.cap_exceeded;
    if (row.ratio) {
      ratio_sum += *row.ratio;
      ++ratio_count;
      if (!report.max_ratio || *row.ratio > *report.max_ratio) report.max_ratio = row.ratio;
    }
  }
  if (ratio_count > 0) report.mean_ratio = ratio_sum / ratio_count;
  return report;
}

std::string report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json node;
    node["instance"] = row.instance_id;
    node["n"] = row.n;
    node["model"] = row.model;
    node["alpha"] = to_string(row.alpha);
    node["beta"] = to_string(row.beta);
    node["delta"] = to_string(row.delta);
    node["epsilon"] = to_string(row.epsilon);
    node["admitted"] = row.admitted;
    node["on_time"] = row.on_time;
    if (row.opt) node["opt"] = to_string(*row.opt);
    else node["opt"] = "cap_exceeded";
    if (row.ratio) node["ratio"] = to_string(*row.ratio);
    else node["ratio"] = nullptr;
    node["ratio_flagged"] = row.ratio_flagged;
    node["lambda"] = to_string(row.lambda);
    if (row.lambda_ok) node["lambda_bound_ok"] = *row.lambda_ok;
    else node["lambda_bound_ok"] = nullptr;
    node["violations"] = row.violations;
    rows.push_back(std::move(node));
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(rows);
  doc["aggregate"] = {
      {"max_ratio", report.max_ratio ? nlohmann::ordered_json(to_string(*report.max_ratio))
                                     : nlohmann::ordered_json(nullptr)},
      {"mean_ratio", report.mean_ratio ? nlohmann::ordered_json(to_string(*report.mean_ratio))
                                       : nlohmann::ordered_json(nullptr)},
      {"violations", report.violation_total},
      {"lambda_violations", report.lambda_violations},
      {"cap_exceeded", report.cap_exceeded},
  };
  return doc.dump();
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "instance,n,model,alpha,beta,delta,epsilon,admitted,on_time,opt,ratio,"
         "lambda,lambda_bound_ok,violations\n";
  out.precision(10);
  for (const auto& row : report.rows) {
    out << row.instance_id << ',' << row.n << ',' << row.model << ','
        << to_double(row.alpha) << ',' << to_double(row.beta) << ','
        << to_double(row.delta) << ',' << to_double(row.epsilon) << ','
        << row.admitted << ',' << row.on_time << ',';
    if (row.opt) out << to_string(*row.opt);
    else out << "cap_exceeded";
    out << ',';
    if (row.ratio) out << to_double(*row.ratio);
    out << ',' << to_double(row.lambda) << ',';
    if (row.lambda_ok) out << (*row.lambda_ok ? "true" : "false");
    out << ',' << row.violations << '\n';
  }
  return out.str();
}

}  // namespace rsched
