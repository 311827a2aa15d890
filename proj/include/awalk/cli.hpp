#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "awalk/step_law.hpp"
#include "awalk/walk.hpp"

namespace awalk {
namespace cli {

// Step-law grammar: "offset:weight(,offset:weight)*" with integer offsets and
// positive integer weights, or the shorthand "u{o1,o2,...}" for a uniform law.
StepLaw parse_step_law(const std::string& spec);
std::string render_step_law(const StepLaw& s);

struct RunConfig {
  std::string subcommand;

  long long a = 2;
  std::string step_spec = "u{-1,0,1}";

  long long q = 5;
  long long q_min = 10001;
  long long q_max = 20001;
  int n = 0;          // 0: subcommand default
  int n_max = 0;      // 0: subcommand default
  double eps = 0.25;  // half-TV threshold
  double alpha = 0.1;
  double delta = 0.1;
  std::uint64_t seed = 1;
  long long samples = 10000;
  int workers = 0;  // 0: AWALK_WORKERS env or hardware count

  int levels = 32;                // hhms
  int k_min = 12, k_max = 20;     // exceptional family
  long long p_max = 100000;       // exceptional prime density
  bool density = false;           // exceptional: include the prime-density table
  long long q0 = 1;               // sieve-check
  long long big_q = 64;           // sieve-check large-sieve Q
  int m_avg = 4;                  // sieve-check multiplicity m
  long long trials = 200;         // sieve-check randomized trials
  long long max_moduli = 0;       // mix-scan subsampling (0: all)
  std::string filter = "odd";     // mix-scan: odd | prime | coprime | stride
  long long stride = 2;
  double h_ref = 0.0;  // 0: derive (closed form for the model walk, else exact increment)

  std::string output;        // empty: stdout
  std::string format = "csv";
  bool no_timestamp = false;
};

// Entropy rate used for normalization when the config does not pin one:
// the closed-form constant for (a, mu) = (2, u{-1,0,1}), otherwise the exact
// increment at the largest cheaply feasible n. Returns (nats, source label).
std::pair<double, std::string> reference_entropy(const WalkParams& p);

// Executes one subcommand; returns the process exit code
// (0 ok, 2 validation error, 3 size cap exceeded).
int run(const RunConfig& cfg);

// Full argv interface (CLI11); what tools/awalk_main.cpp calls.
int main_cli(int argc, char** argv);

}  // namespace cli
}  // namespace awalk
