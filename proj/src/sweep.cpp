#include "alteach/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "alteach/rng.hpp"

namespace alteach {

void SweepConfig::validate() const {
  if (betas.empty()) throw Error("sweep: betas must be non-empty");
  for (double b : betas) {
    if (!(b >= 1.0)) throw Error("sweep: every beta must be >= 1");
  }
  if (!constraints.empty() && psis.empty()) throw Error("sweep: psis must be non-empty");
  for (double p : psis) {
    if (!(p > 0.0 && p <= 1.0)) throw Error("sweep: every psi must lie in (0, 1]");
  }
  if (constraints.empty() && !baselines) throw Error("sweep: nothing to run");
}

std::uint64_t target_seed(std::uint64_t master, Index target) { return mix_seed(master, target); }

namespace {

struct Cell {
  double beta;
  std::optional<double> psi;
  std::string name;
  ConstraintSpec constraint;
  bool with_teacher;
};

std::vector<Cell> cells_of(const SweepConfig& config) {
  std::vector<Cell> cells;
  for (double beta : config.betas) {
    if (config.baselines) {
      cells.push_back({beta, std::nullopt, kAloneCell, ConstraintSpec::unconstrained(), false});
      cells.push_back({beta, std::nullopt, to_string(ConstraintKind::Unconstrained), ConstraintSpec::unconstrained(),
                       true});
    }
    for (double psi : config.psis) {
      for (ConstraintKind kind : config.constraints) {
        ConstraintSpec spec{kind, psi, 1};
        cells.push_back({beta, psi, to_string(kind), spec, true});
      }
    }
  }
  return cells;
}

}  // namespace

std::vector<SweepRow> sweep(const TeachingProblem& problem, const SweepConfig& config) {
  config.validate();
  require_teachable(problem);
  std::vector<Index> targets = config.targets;
  if (targets.empty()) {
    for (Index h = 0; h < problem.hypothesis_count(); ++h) targets.push_back(h);
  }
  for (Index t : targets) {
    if (t >= problem.hypothesis_count()) throw Error("sweep: target " + std::to_string(t) + " out of range");
  }
  const auto cells = cells_of(config);
  std::vector<TeachingProblem> per_target;
  per_target.reserve(targets.size());
  for (Index t : targets) per_target.push_back(problem.with_target(t));

  const std::size_t tasks = cells.size() * targets.size();
  std::vector<SweepRow> rows(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks) return;
      const Cell& cell = cells[i / targets.size()];
      const std::size_t ti = i % targets.size();
      try {
        SweepRow row;
        row.beta = cell.beta;
        row.psi = cell.psi;
        row.constraint = cell.name;
        row.target = targets[ti];
        row.seed = target_seed(config.seed, targets[ti]);
        SessionOptions opts;
        opts.budget = config.budget;
        opts.with_teacher = cell.with_teacher;
        const auto tr =
            run_session(per_target[ti], LearnerSpec::beta_greedy(cell.beta, row.seed), cell.constraint, opts);
        row.rounds = tr.rounds.size();
        row.labels_total = tr.total_examples;
        row.terminated = tr.terminated;
        row.alpha = alpha_of_run(tr);
        rows[i] = std::move(row);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t n_threads = std::max<std::size_t>(1, std::min(config.threads, tasks));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

namespace {

std::pair<double, double> mean_se(const std::vector<double>& v) {
  if (v.empty()) return {std::nan(""), std::nan("")};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return {mean, sd / std::sqrt(static_cast<double>(v.size()))};
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<SweepRow>& rows) {
  std::vector<AggregateRow> out;
  std::vector<std::vector<double>> labels, rounds, alphas;
  auto same_cell = [](const AggregateRow& a, const SweepRow& r) {
    return a.beta == r.beta && a.psi == r.psi && a.constraint == r.constraint;
  };
  for (const auto& r : rows) {
    if (out.empty() || !same_cell(out.back(), r)) {
      AggregateRow a;
      a.beta = r.beta;
      a.psi = r.psi;
      a.constraint = r.constraint;
      out.push_back(a);
      labels.emplace_back();
      rounds.emplace_back();
      alphas.emplace_back();
    }
    auto& a = out.back();
    ++a.n;
    labels.back().push_back(static_cast<double>(r.labels_total));
    rounds.back().push_back(static_cast<double>(r.rounds));
    if (r.alpha.infinite) {
      ++a.infinite_alpha;
    } else {
      alphas.back().push_back(r.alpha.value);
    }
    if (!r.terminated) ++a.unterminated;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::tie(out[i].mean_labels, out[i].se_labels) = mean_se(labels[i]);
    std::tie(out[i].mean_rounds, out[i].se_rounds) = mean_se(rounds[i]);
    out[i].mean_alpha = mean_se(alphas[i]).first;
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string rows_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "beta,psi,constraint,target,rounds,labels_total,terminated,alpha,seed\n";
  for (const auto& r : rows) {
    out << format_number(r.beta) << ',' << (r.psi ? format_number(*r.psi) : "") << ',' << csv_field(r.constraint)
        << ',' << r.target << ',' << r.rounds << ',' << r.labels_total << ',' << (r.terminated ? "true" : "false")
        << ',' << format_number(r.alpha.value) << ',' << r.seed << '\n';
  }
  return out.str();
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  out << "beta,psi,constraint,n,mean_labels,se_labels,mean_rounds,se_rounds,mean_alpha,infinite_alpha,unterminated\n";
  for (const auto& a : rows) {
    out << format_number(a.beta) << ',' << (a.psi ? format_number(*a.psi) : "") << ',' << csv_field(a.constraint)
        << ',' << a.n << ',' << format_number(a.mean_labels) << ',' << format_number(a.se_labels) << ','
        << format_number(a.mean_rounds) << ',' << format_number(a.se_rounds) << ',' << format_number(a.mean_alpha)
        << ',' << a.infinite_alpha << ',' << a.unterminated << '\n';
  }
  return out.str();
}

}  // namespace alteach
