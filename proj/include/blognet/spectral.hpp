#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blognet/bigraph.hpp"
#include "blognet/csr.hpp"
#include "blognet/util.hpp"

namespace blognet {

// L = I - D^{-1/2} W D^{-1/2} over the non-isolated nodes of a weighted
// graph; spectrum lies in [0,2] and sqrt(l) spans the zero eigenspace per
// connected component.
struct LaplacianMatrix {
    std::vector<std::string> nodes;
    std::vector<std::string> isolated;  // removed zero-strength nodes
    std::vector<double> strengths;
    CsrMatrix matrix;
    std::vector<std::int32_t> component;  // connected component per node
    std::size_t n_components = 0;
};

LaplacianMatrix normalized_laplacian(const WeightedUserGraph& g);
// bipartite variant: the matrix spans users then posts, ids prefixed u:/c:
LaplacianMatrix normalized_laplacian(const UserPostWeightedGraph& g);

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    std::vector<std::vector<double>> vectors;
    std::vector<double> residuals;  // ||L v - lambda v||
};

class EigenNotConverged : public Error {
  public:
    EigenNotConverged(const std::string& msg, Spectrum partial)
        : Error(msg), partial_(std::move(partial)) {}
    const Spectrum& partial() const { return partial_; }

  private:
    Spectrum partial_;
};

// Deflated Lanczos with full reorthogonalization. The zero eigenspace is
// constructed analytically from sqrt(l) per component; the remaining pairs
// come from restarted Lanczos on the orthogonal complement.
Spectrum smallest_eigenpairs(const LaplacianMatrix& L, std::size_t k_req,
                             std::uint64_t seed = 12345);

// Community count = eigenvalues below the dominant relative gap, zeros
// (< 1e-9) always counted. Returns at least 1. m_scan = 0 scans everything.
std::size_t detect_num_communities(const std::vector<double>& eigenvalues,
                                   std::size_t m_scan = 0);

struct CommunityAssignment {
    std::vector<int> labels;  // 1..k; 0 = unclassified (central ring)
    std::size_t k = 0;
    std::vector<double> row_norms;
    double epsilon_ring = 0.0;
};

// Clusters nodes on the unit sphere of the k-1 eigenvector coordinates that
// follow the leading zero vector. eps_ring < 0 selects the default
// 1e-3 * max row norm.
CommunityAssignment assign_branches(const Spectrum& spec, std::size_t k,
                                    double eps_ring = -1.0, std::uint64_t seed = 42);

// 2 * I(A;B) / (H(A) + H(B)); label 0 participates as its own class.
double normalized_mutual_information(const std::vector<int>& a, const std::vector<int>& b);

void write_spectrum_tsv(std::ostream& os, const Spectrum& spec);
// node, x, y, z, label; coordinates are the first `dims` eigenvectors past
// the zero eigenspace (z column 0 when dims = 2)
void write_scatter_tsv(std::ostream& os, const std::vector<std::string>& nodes,
                       const Spectrum& spec, int dims, const CommunityAssignment& assignment);
void write_laplacian(std::ostream& os, const LaplacianMatrix& L);

}  // namespace blognet
