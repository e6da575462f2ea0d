#pragma once

#include "plateau/decompose.hpp"
#include "plateau/solver.hpp"

#include <string>
#include <vector>

namespace plateau {

struct ClassificationReport {
  bool is_tame = true;
  int n_hooks = 0;
  std::vector<bool> condition1;                 // hook is an extreme curve
  std::vector<std::vector<bool>> condition2;    // CH(beta_i) misses beta_j, ordered pairs
  std::vector<bool> condition3;                 // hook misses the core
  bool is_weak_extreme = false;
  bool is_extreme = false;                      // n = 0
  double total_curvature_value = 0.0;
  bool eww_flag = false;                        // total curvature < 4*pi
  std::vector<int> side;                        // +1 / -1 per hook
  std::vector<std::string> diagnostics;
  std::vector<Vec3> witnesses;                  // condition-3 stab points etc.
  std::vector<std::vector<int>> linking_diagnostic;  // hook-pair linking numbers
};

// Everything the pipeline needs downstream of classification.
struct Classification {
  ClassificationReport report;
  Decomposition decomposition;
  std::vector<DiskMesh> cores;      // one per gamma-hat loop
  std::vector<SolveStats> core_stats;
};

std::vector<bool> check_condition1(const Decomposition& d, double tol_scale = 1.0);

std::vector<std::vector<bool>> check_condition2(const Decomposition& d, double tol_scale = 1.0);

// Least area disk(s) spanning the gamma-hat loop(s); free solves, verified
// inside the hull (maximum principle check recorded in stats).
std::vector<DiskMesh> solve_core(const Decomposition& d, const SolverConfig& config,
                                 std::vector<SolveStats>* stats = nullptr);

std::vector<bool> check_condition3(const Decomposition& d, const std::vector<DiskMesh>& cores,
                                   std::vector<Vec3>* witnesses = nullptr);

// Assign each hook to a side of the core: hooks in the component of the
// first hook get +1. Throws SideAmbiguous when a hook's samples disagree.
std::vector<int> partition_sides(const Decomposition& d, const std::vector<DiskMesh>& cores);

// Full classification pipeline for a validated curve.
Classification classify(const JordanCurve& curve, const SolverConfig& config,
                        RouteMode mode = RouteMode::StraightPreferred);

}  // namespace plateau
