#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "bhdpc/instance.hpp"
#include "bhdpc/topology.hpp"

namespace bhdpc {

/// How the top level of a solve was assembled.
enum class CoverCase {
  kHamiltonian,   // a single path
  kBase,          // BH_2 search
  kChain,         // every subcube holds a source or sink
  kPassThrough,   // empty subcubes exist but mirror flow crosses all of them
  kOneEmpty,      // one subcube spliced in through a three-path exchange
  kTwoAdjacent,   // two neighboring subcubes spliced in
  kTwoOpposite,   // two opposite subcubes spliced in
  kThreeEmpty,    // only reachable for sub-instances with few paths
};

const char* to_string(CoverCase c);

struct SolveTrace {
  CoverCase top_case = CoverCase::kBase;
  int split_dim = -1;
  int anchor = -1;                    // component placed at ring position 0
  std::vector<int> empty_positions;   // ring positions with no source and no sink
  std::vector<int> spliced_positions; // ring positions left for splicing
  int circulation = 0;                // extra ring flow used at the top level
  int levels = 0;                     // deepest chain of splits
  int relaxations = 0;                // oversubscribed subcubes, all levels
  int relax_retries = 0;              // re-solves after a mirror collision
  int splices = 0;                    // all levels
  int plan_fallbacks = 0;             // assemblies abandoned for a later plan, all levels
};

struct SolveOptions {
  std::chrono::milliseconds budget{30000};
  SolveTrace* trace = nullptr;
};

/// Four subcubes in ring order starting at the anchor. Every white vertex at
/// position p has its split-dimension neighbors at position p+1.
struct SplitPlan {
  int n = 0;
  int split_dim = 0;
  std::shared_ptr<const Split> split;
  int anchor = 0;
  std::array<int, 4> order{};                   // component index at position p
  std::array<std::vector<Vertex>, 4> sources;   // by position
  std::array<std::vector<Vertex>, 4> sinks;     // by position
  std::array<int, 4> deficit{};                 // |T_p| - |S_p|

  const SubcubeView& view(int position) const { return split->views[order[position & 3]]; }
  bool empty(int position) const {
    return sources[position & 3].empty() && sinks[position & 3].empty();
  }
};

/// Auxiliary white endpoints `a` in one subcube and their chosen black
/// cross-neighbors `b` (b[j] mirrors a[j]) in the next one.
struct MirrorAssignment {
  std::vector<Vertex> a;
  std::vector<Vertex> b;
};

/// First dimension in the order n-1, ..., 0 whose split leaves at most 2n-4
/// sources in every subcube.
std::optional<int> balanced_split_dimension(int n, const std::vector<Vertex>& sources);

/// Split dimension plus anchor rotation with |S_0| >= |T_0|, |S_1| <= |T_1|
/// and D_1 + D_2 >= 0. Requires n >= 3. Throws InternalError if no choice
/// exists.
SplitPlan select_split(const Instance& instance);

/// Unpaired (2n-2)-DPC of BH_n from S to T. Every returned cover has passed
/// verify_cover; a rejected construction throws InternalError.
PathCover solve(const Instance& instance, const SolveOptions& options = {});

/// Same construction for any 1 <= |S| = |T| <= 2n-2.
PathCover solve_any(const Instance& instance, const SolveOptions& options = {});

/// BH_2 by exhaustive depth-first search over path extensions.
PathCover solve_base(const Instance& instance, const SolveOptions& options = {});

/// Greedy canonical-order choice of `count` white vertices of `view` outside
/// forbidden_white, each mirrored to a distinct cross-neighbor in `next`
/// outside forbidden_black.
MirrorAssignment choose_mirror(const SubcubeView& view, const SubcubeView& next, int count,
                               const std::set<Vertex>& forbidden_white,
                               const std::set<Vertex>& forbidden_black);

/// Distinct black cross-neighbors in `next` for each white vertex, avoiding
/// `forbidden_black`; nullopt when some backup class runs out.
std::optional<std::vector<Vertex>> assign_mirrors(const SubcubeView& next, int split_dim,
                                                  const std::vector<Vertex>& whites,
                                                  const std::set<Vertex>& forbidden_black);

struct RelaxResult {
  std::vector<Path> paths;             // white end first
  std::vector<Vertex> extra_whites;    // new white endpoints, one per leftover
  std::vector<Vertex> leftovers;       // sinks excluded from the sub-solve
};

/// A subcube of BH_m whose sink side (sinks plus incoming mirrors) exceeds
/// 2m-4, with exactly 2m-4 whites: solve a (2m-4)-DPC to all but one or two
/// sinks (canonically last ones first), then cut each path at every leftover sink y just after y. y becomes
/// a black end; the vertex after it becomes a new white end. `accept` vets
/// the new white ends (mirror feasibility); on rejection other leftover
/// choices are tried in order.
RelaxResult relax_oversubscribed(const SubcubeView& view, const std::vector<Vertex>& sinks_plus_mirrors,
                                 const std::vector<Vertex>& sources, const std::vector<Vertex>& aux,
                                 const std::function<bool(const std::vector<Vertex>&)>& accept,
                                 const SolveOptions& options = {});

/// k-DPC of a subcube, in parent coordinates; paths[i] starts at sources[i].
std::vector<Path> solve_in_subcube(const SubcubeView& view, const std::vector<Vertex>& sources,
                                   const std::vector<Vertex>& sinks, const SolveOptions& options = {});

enum class FlankRule {
  kFree,                // target lies in a subcube being spliced in
  kSuccessorInFlank,    // target must be followed on its path by a vertex of its own subcube
  kPredecessorInFlank,  // target must be preceded on its path by a vertex of its own subcube
};

/// Consecutive y -> x on a path (y black, x white) inside the donor subcube,
/// with the chosen split-dimension neighbors of x (at donor+1) and y (at
/// donor-1).
struct SurgeryEdge {
  Vertex y;
  Vertex x;
  Vertex x_target;
  Vertex y_target;
};

/// All qualifying surgery edges in path order, both cross-neighbor choices
/// per endpoint.
std::vector<SurgeryEdge> surgery_candidates(const std::vector<Path>& paths, const SplitPlan& plan,
                                            int donor_position, FlankRule x_rule, FlankRule y_rule);

std::optional<SurgeryEdge> find_surgery_edge(const std::vector<Path>& paths, const SplitPlan& plan,
                                             int donor_position, FlankRule x_rule, FlankRule y_rule);

/// Mirror chain through positions 1, 2, 3, 0. Returns the stitched paths on
/// all covered positions and lists positions that received no path.
struct ChainResult {
  std::vector<Path> paths;
  std::vector<int> uncovered;
};
ChainResult solve_chain(const SplitPlan& plan, const SolveOptions& options = {});

/// Splices an uncovered subcube at `position` into a cover of the rest.
std::vector<Path> splice_one_empty(const std::vector<Path>& partial, const SplitPlan& plan, int position);
/// Uncovered subcubes at `position` and `position + 1`.
std::vector<Path> splice_two_adjacent(const std::vector<Path>& partial, const SplitPlan& plan, int position);
/// Uncovered subcubes at `position` and `position + 2`.
std::vector<Path> splice_two_opposite(const std::vector<Path>& partial, const SplitPlan& plan, int position);
/// Every subcube except `covered_position` uncovered.
std::vector<Path> splice_three_empty(const std::vector<Path>& partial, const SplitPlan& plan,
                                     int covered_position);

}  // namespace bhdpc
