#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "zsl/csv.hpp"

namespace zsl {

// Edge-probability rule evaluated per vertex count m (natural logarithm):
//   "0.01"            absolute
//   "c*logm/m"        c log m / m
//   "c*logm/(8*m^2)"  c log m / (8 m^2)
//   "c/m^2"           c / m^2 (fixed rho m^2)
// A missing "c*" means c = 1. Throws InvalidDescriptor.
class RhoRule {
 public:
  enum class Form { Absolute, LogOverM, LogOver8M2, OverM2 };

  static RhoRule parse(const std::string& text);

  double operator()(std::size_t m) const;
  const std::string& text() const noexcept { return text_; }
  Form form() const noexcept { return form_; }
  double coefficient() const noexcept { return c_; }

 private:
  Form form_ = Form::Absolute;
  double c_ = 0.0;
  std::string text_;
};

// Runs fn(i) for i in [0, count) on up to `workers` threads and returns the
// results in index order. The first exception thrown by a task is rethrown.
template <class T>
std::vector<T> run_indexed(std::size_t count, int workers, const std::function<T(std::size_t)>& fn) {
  std::vector<std::optional<T>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct ExperimentDescriptor {
  std::string kind = "er_gap";  // er_gap | er_degree
  std::vector<std::size_t> m_values;
  std::vector<std::string> rho_rules;
  int trials = 1;
  std::uint64_t master_seed = 0;
  int workers = 1;
};

// Grid points are enumerated m-major, then rho rule; the trial seed is
// hash_seed({master_seed, grid_index, trial}).
std::uint64_t trial_seed(std::uint64_t master, std::size_t grid_index, std::size_t trial);

struct ErTrialRow {
  std::string kind;
  std::size_t m = 0;
  double rho = 0.0;
  std::uint64_t master_seed = 0;
  std::size_t grid = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<bool> connected;
  std::optional<double> gap;
  std::optional<double> scaled_gap;
  double min_deg = 0.0;
  double max_deg = 0.0;
  std::optional<double> l1_dev_expected;
  std::optional<double> l1_dev_mean;
};

// Throws InvalidDescriptor for an unknown kind, an empty grid or trials < 1.
void validate_descriptor(const ExperimentDescriptor& d);

std::vector<ErTrialRow> run_er_experiment(const ExperimentDescriptor& d);

const std::vector<std::string>& er_csv_columns();
void write_er_csv(std::ostream& out, const std::vector<ErTrialRow>& rows, const ConfigEcho& config);
void write_er_json(std::ostream& out, const std::vector<ErTrialRow>& rows, const ConfigEcho& config);

}  // namespace zsl
