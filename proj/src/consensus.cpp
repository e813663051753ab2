#include "hypercomm/consensus.hpp"

#include "hypercomm/error.hpp"

#include <Eigen/Core>

namespace hypercomm {

AssociationMatrix association_matrix(std::span<const CoMembershipMatrix> matrices) {
  if (matrices.empty()) fail(ErrorCode::InvalidArgument, "need at least one co-membership matrix");
  const Index n = matrices.front().size();
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> sum =
      Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Zero(n, n);
  for (const auto& m : matrices) {
    if (m.matrix.rows() != n || m.matrix.cols() != n)
      fail(ErrorCode::DimensionMismatch, "co-membership matrices must all be " + std::to_string(n) + "x" +
                                             std::to_string(n));
    sum += m.matrix.cast<std::int64_t>();
  }
  AssociationMatrix a;
  a.n_matrices = static_cast<Index>(matrices.size());
  a.n_subjects = a.n_matrices;
  a.matrix = sum.cast<double>() / static_cast<double>(a.n_matrices);
  return a;
}

IncidenceMatrix group_hyperedges(const AssociationMatrix& a, Index e_group) {
  return build_hyperedges(a.matrix, e_group, false);
}

ConsensusResult consensus_communities(const AssociationMatrix& a, std::uint64_t seed, const ConsensusOptions& opts) {
  ConsensusResult out;
  out.e_group = opts.e_group;
  if (opts.auto_order) {
    const Matrix scores[] = {a.matrix};
    out.e_group = min_uniform_order(std::span<const Matrix>(scores), a.size());
  }
  out.hypergraph = group_hyperedges(a, out.e_group);
  try {
    out.communities = cluster_hypergraph(out.hypergraph, seed, opts.clustering);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DisconnectedLineGraph) throw;
    fail(ErrorCode::DisconnectedLineGraph, "group line graph at order e_group=" + std::to_string(out.e_group) +
                                               " is disconnected; increase e_group or enable automatic order selection");
  }
  return out;
}

}  // namespace hypercomm
