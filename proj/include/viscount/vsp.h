#ifndef VISCOUNT_VSP_H
#define VISCOUNT_VSP_H

#include <memory>
#include <optional>
#include <vector>

#include "viscount/arrangement.h"
#include "viscount/scene.h"
#include "viscount/visibility_graph.h"

namespace viscount {

enum class VspMode { full, pruned };

// All distinct lines through pairs of distinct endpoint positions.
std::vector<Line> candidate_lines_full(const Scene& scene);

// One piece kept from the line through a mutually visible endpoint pair:
// the outward ray past one of the two endpoints, cut at its first scene
// hit.  The open middle part never carries a visibility event and is gone.
struct PrunedPiece {
    Curve piece;
    std::uint32_t from_vertex;  // visibility-graph vertex the ray leaves
    std::uint32_t pair_vertex;  // the opposite endpoint of the generating pair
    std::optional<Point> cut;   // first scene hit, when the ray was bounded
};

struct PrunedLineSet {
    std::vector<PrunedPiece> pieces;
    std::vector<Line> supporting;  // scene supporting lines, always included
    std::size_t graph_edges = 0;   // m of the generating visibility graph
};

PrunedLineSet candidate_pieces_pruned(const Scene& scene,
                                      bool keep_drop_test = false);

// Visibility space partition: an arrangement of the candidate curve set
// with the exact visible set pinned on every face.
class VspStructure {
  public:
    VspMode mode;
    Subdivision subdivision;
    std::vector<std::uint32_t> face_count;   // per face
    // optional per-face visible-id bitsets, 64 ids per word
    std::vector<std::vector<std::uint64_t>> face_bits;
    std::size_t scene_size = 0;

    std::size_t size() const { return subdivision.boundary_segment_count(); }

    bool face_sees(std::size_t face, std::size_t id) const {
        return (face_bits[face][id / 64] >> (id % 64)) & 1;
    }
};

// keep_drop_test additionally discards pruned pieces whose midpoint
// crossing provably changes no visibility (exact two-sided comparison).
// bitvec_limit controls whether per-face visible sets are stored.
VspStructure build_vsp(const Scene& scene, VspMode mode,
                       bool keep_drop_test = false,
                       std::size_t bitvec_limit = 4096);

std::size_t vsp_query(const VspStructure& vsp, const Point& p);

// k-relaxed coarsening: keep only count-separating edges in the residue
// class kappa chosen by pigeonhole, merge faces across everything else.
class RelaxedVsp {
  public:
    std::shared_ptr<const VspStructure> base;
    std::size_t k = 0;
    std::size_t kappa = 1;                  // chosen residue in [1, k+1]
    std::vector<std::uint32_t> super_of;    // face -> super face root
    std::vector<std::uint32_t> super_count; // per face root, representative count
    std::vector<std::uint32_t> kept_edges;  // ids of retained separating edges
    std::size_t separating_edges = 0;       // N_sep

    std::size_t size() const { return kept_edges.size(); }
};

RelaxedVsp coarsen_vsp(std::shared_ptr<const VspStructure> vsp, std::size_t k);

std::size_t relaxed_query(const RelaxedVsp& rvsp, const Point& p);

}  // namespace viscount

#endif
