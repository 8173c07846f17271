#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace symkit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Family { sl_n_r, hyperbolic, complex_sl_n, custom };
enum class Normalization { killing, unit_curvature };

const char* to_string(Family f);
const char* to_string(Normalization n);
Family parse_family(const std::string& s);
Normalization parse_normalization(const std::string& s);

/// A positive restricted root, stored as a covector on the Cartan subspace in
/// the space's coordinates: alpha(H) = vector . H.
struct Root {
    Vec vector;
    int multiplicity = 1;
    bool indivisible = true;
};

struct RestrictedRootSystem {
    int rank = 0;
    std::vector<Root> positive_roots;

    int dim_n() const;
    int indivisible_count() const;
};

/// Root data with a realized inner product on the Cartan subspace.
///
/// Vectors H live in coordinates of the Cartan subspace; roots and spectral
/// parameters are covectors in the dual coordinates. The inner product on
/// vectors is H^T G H, on covectors lambda^T G^{-1} mu.
///
/// For sl_n_r and complex_sl_n the coordinates are simple-root coordinates
/// x_k = alpha_k(H) = d_k - d_{k+1} of a trace-zero diagonal d, so the closed
/// positive chamber is the nonnegative orthant.
class SymmetricSpace {
public:
    /// Classical families. `size` is n for sl_n_r / complex_sl_n and d for
    /// hyperbolic (real hyperbolic d-space).
    static SymmetricSpace build(Family family, int size, Normalization norm);

    /// User-supplied positive roots. Indivisibility flags are validated when
    /// given and inferred otherwise. Without a gram the killing convention
    /// G = 1/2 sum m_alpha alpha alpha^T is used.
    static SymmetricSpace custom(std::vector<Root> roots, std::optional<Mat> gram,
                                 Normalization norm, bool flags_given = true);

    static SymmetricSpace from_json(const nlohmann::json& doc);
    nlohmann::ordered_json to_json() const;

    Family family() const { return family_; }
    int size() const { return size_; }
    Normalization normalization() const { return norm_; }
    int rank() const { return roots_.rank; }
    int dim_n() const { return roots_.dim_n(); }
    int dim_gk() const { return rank() + dim_n(); }
    const RestrictedRootSystem& root_system() const { return roots_; }
    const std::vector<Root>& roots() const { return roots_.positive_roots; }
    const std::vector<int>& simple_roots() const { return simple_; }
    const Mat& gram() const { return gram_; }
    const Mat& gram_inverse() const { return gram_inv_; }
    /// Conversion factor gram_unit_curvature / gram_killing.
    double metric_scale() const { return metric_scale_; }
    /// Name of the coordinate system of H (simple_root, radial, custom).
    const std::string& coordinates() const { return coordinates_; }
    std::string label() const;

    /// rho = 1/2 sum m_alpha alpha as a covector, and as a vector through G^{-1}.
    const Vec& rho() const { return rho_; }
    Vec rho_vector() const { return gram_inv_ * rho_; }
    double rho_norm_sq() const { return rho_norm_sq_; }
    double rho_norm() const { return std::sqrt(rho_norm_sq_); }

    double pairing(const Vec& covector, const Vec& H) const;
    double inner(const Vec& H1, const Vec& H2) const;
    double norm(const Vec& H) const;
    double dual_inner(const Vec& l1, const Vec& l2) const;
    double dual_norm(const Vec& l) const;
    /// Vector identified with a covector through the gram pairing.
    Vec to_vector(const Vec& covector) const { return gram_inv_ * covector; }
    Vec to_covector(const Vec& H) const { return gram_ * H; }

    /// Coroot 2 G^{-1} a / (a^T G^{-1} a), so that s_a(H) = H - a(H) coroot.
    Vec coroot(int root_index) const;
    Vec reflect(int root_index, const Vec& H) const;

    bool in_closed_chamber(const Vec& H, double tol = 1e-12) const;
    bool in_open_chamber(const Vec& H) const;

    void check_dim(const Vec& v, const char* what) const;

private:
    SymmetricSpace() = default;
    void finalize();

    Family family_ = Family::custom;
    int size_ = 0;
    Normalization norm_ = Normalization::killing;
    RestrictedRootSystem roots_;
    std::vector<int> simple_;
    Mat gram_, gram_inv_;
    double metric_scale_ = 1.0;
    std::string coordinates_ = "custom";
    Vec rho_;
    double rho_norm_sq_ = 0.0;
};

/// Chamber point with its chamber flag.
struct CartanVector {
    Vec coords;
    bool in_chamber = false;
};
CartanVector make_cartan_vector(const SymmetricSpace& space, Vec coords);

/// sl_n_r / complex_sl_n helpers between trace-zero diagonals and simple-root
/// coordinates. The diagonal is recentred to trace zero on the way back.
Vec from_diagonal(const SymmetricSpace& space, const Vec& diagonal);
Vec to_diagonal(const SymmetricSpace& space, const Vec& H);
/// Covector of alpha_ij (1-based, i < j) for sl_n_r / complex_sl_n.
Vec root_ij(const SymmetricSpace& space, int i, int j);
/// Constant c with <X, Y> = c Tr(XY) on diagonals, for sl_n_r / complex_sl_n.
double trace_form_scale(const SymmetricSpace& space);

/// delta(H) = prod sinh(alpha(H))^{m_alpha}, the |K/M| prefactor fixed to 1.
/// Returns 0 on walls; DomainError outside the closed chamber.
double delta_density(const SymmetricSpace& space, const Vec& H);
/// log delta(H); -inf on walls.
double log_delta_density(const SymmetricSpace& space, const Vec& H);

struct DensitySandwich {
    double lower = 0.0;
    double upper = 0.0;
    bool on_wall = false;
};
/// Envelope prod (alpha(H) / (1 + alpha(H)))^{m_alpha} e^{2 rho(H)} for both
/// sides; the caller multiplies in its fitted constants.
DensitySandwich density_sandwich(const SymmetricSpace& space, const Vec& H);
double log_density_envelope(const SymmetricSpace& space, const Vec& H);

/// Weyl orbit generated by the simple reflections (breadth first, points
/// deduplicated at relative tolerance 1e-9). CapabilityError past max_size.
std::vector<Vec> weyl_orbit(const SymmetricSpace& space, const Vec& H,
                            std::size_t max_size = 200000);
bool is_dominant(const SymmetricSpace& space, const Vec& H, double tol = 1e-12);
/// The dominant element of the orbit of H.
Vec dominant_representative(const SymmetricSpace& space, const Vec& H);
/// Reflections (as root indices) whose product maps H to its dominant
/// representative, applied left to right.
std::vector<int> dominance_word(const SymmetricSpace& space, const Vec& H);

}  // namespace symkit
