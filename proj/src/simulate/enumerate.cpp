#include <deque>
#include <set>
#include <thread>

#include "umlsem/simulate/run.hpp"
#include "umlsem/simulate/trace.hpp"

namespace umlsem::sim {

namespace {

/// Replays a fixed prefix of choices, then always picks 0, recording every
/// choice point so the unexplored alternatives can be scheduled.
class ScriptChooser : public Chooser {
 public:
  explicit ScriptChooser(const std::vector<std::size_t>& prefix) : prefix_(prefix) {}

  std::size_t choose(std::size_t n) override {
    if (n <= 1) return 0;
    std::size_t c = points_.size() < prefix_.size() ? prefix_[points_.size()] : 0;
    points_.emplace_back(c, n);
    return c;
  }

  const std::vector<std::pair<std::size_t, std::size_t>>& points() const { return points_; }

 private:
  const std::vector<std::size_t>& prefix_;
  std::vector<std::pair<std::size_t, std::size_t>> points_;
};

struct Job {
  std::vector<std::size_t> prefix;
  Execution exec;
  std::vector<std::vector<std::size_t>> children;
};

void explore(const World& world, std::size_t horizon, Job& job) {
  ScriptChooser chooser(job.prefix);
  job.exec = run(world, horizon, chooser, true);
  const auto& points = chooser.points();
  std::vector<std::size_t> taken;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i >= job.prefix.size()) {
      for (std::size_t k = 1; k < points[i].second; ++k) {
        auto child = taken;
        child.push_back(k);
        job.children.push_back(std::move(child));
      }
    }
    taken.push_back(points[i].first);
  }
}

}  // namespace

Enumeration enumerate_executions(const World& world, const EnumerateOptions& options) {
  Enumeration out;
  std::deque<std::vector<std::size_t>> queue{{}};
  std::set<std::string> seen;
  const unsigned threads = std::max(1u, options.threads);
  const std::size_t batch_size = 16 * threads;

  while (!queue.empty()) {
    if (out.runs >= options.budget) {
      out.incomplete = true;
      break;
    }
    std::vector<Job> batch;
    while (!queue.empty() && batch.size() < batch_size && out.runs + batch.size() < options.budget) {
      batch.push_back({std::move(queue.front()), {}, {}});
      queue.pop_front();
    }
    if (threads == 1 || batch.size() == 1) {
      for (auto& job : batch) explore(world, options.horizon, job);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < batch.size(); i += threads) explore(world, options.horizon, batch[i]);
        });
      }
      for (auto& th : pool) th.join();
    }
    for (auto& job : batch) {
      ++out.runs;
      for (auto& c : job.children) queue.push_back(std::move(c));
      if (!seen.insert(to_jsonl(job.exec)).second) continue;
      out.executions.push_back(std::move(job.exec));
      if (options.accept && options.accept(out.executions.back())) {
        out.accepted = out.executions.size() - 1;
        return out;
      }
    }
  }
  return out;
}

}  // namespace umlsem::sim
