#include "symkit/rootdata.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "symkit/error.hpp"
#include "symkit/special.hpp"

namespace symkit {

const char* to_string(Family f) {
    switch (f) {
        case Family::sl_n_r: return "sl_n_r";
        case Family::hyperbolic: return "hyperbolic";
        case Family::complex_sl_n: return "complex_sl_n";
        case Family::custom: return "custom";
    }
    return "custom";
}

const char* to_string(Normalization n) {
    return n == Normalization::killing ? "killing" : "unit_curvature";
}

Family parse_family(const std::string& s) {
    if (s == "sl_n_r" || s == "slnr") return Family::sl_n_r;
    if (s == "hyperbolic" || s == "hyperbolic_d") return Family::hyperbolic;
    if (s == "complex_sl_n") return Family::complex_sl_n;
    if (s == "custom") return Family::custom;
    throw ConstructionError("unknown family '" + s + "'");
}

Normalization parse_normalization(const std::string& s) {
    if (s == "killing") return Normalization::killing;
    if (s == "unit_curvature" || s == "unit") return Normalization::unit_curvature;
    throw ConstructionError("unknown normalization '" + s + "'");
}

int RestrictedRootSystem::dim_n() const {
    int total = 0;
    for (const auto& r : positive_roots) total += r.multiplicity;
    return total;
}

int RestrictedRootSystem::indivisible_count() const {
    return static_cast<int>(std::count_if(positive_roots.begin(), positive_roots.end(),
                                          [](const Root& r) { return r.indivisible; }));
}

namespace {

// Positive c with b = c a, or 0 when a and b are not parallel.
double parallel_factor(const Vec& a, const Vec& b) {
    const double aa = a.squaredNorm();
    const double c = a.dot(b) / aa;
    if ((b - c * a).norm() > 1e-10 * (1.0 + b.norm())) return 0.0;
    return c;
}

Mat killing_gram(const std::vector<Root>& roots, int rank) {
    Mat g = Mat::Zero(rank, rank);
    for (const auto& r : roots) g += 0.5 * r.multiplicity * r.vector * r.vector.transpose();
    return g;
}

bool positive_definite(const Mat& g) {
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + g.cwiseAbs().maxCoeff()))
        return false;
    Eigen::LLT<Mat> llt(0.5 * (g + g.transpose()));
    return llt.info() == Eigen::Success;
}

std::vector<Root> sl_roots(int n, int multiplicity) {
    std::vector<Root> roots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec v = Vec::Zero(n - 1);
            for (int k = i; k < j; ++k) v[k] = 1.0;
            roots.push_back({v, multiplicity, true});
        }
    return roots;
}

}  // namespace

SymmetricSpace SymmetricSpace::build(Family family, int size, Normalization norm) {
    SymmetricSpace s;
    s.family_ = family;
    s.size_ = size;
    s.norm_ = norm;
    switch (family) {
        case Family::sl_n_r:
        case Family::complex_sl_n:
            if (size < 2) throw ConstructionError("sl_n families need n >= 2");
            if (size > 256) throw ConstructionError("sl_n families are limited to n <= 256");
            s.roots_.rank = size - 1;
            s.roots_.positive_roots = sl_roots(size, family == Family::sl_n_r ? 1 : 2);
            s.coordinates_ = "simple_root";
            break;
        case Family::hyperbolic: {
            if (size < 2) throw ConstructionError("hyperbolic spaces need d >= 2");
            s.roots_.rank = 1;
            Vec v(1);
            v[0] = 1.0;
            s.roots_.positive_roots = {{v, size - 1, true}};
            s.coordinates_ = "radial";
            break;
        }
        case Family::custom:
            throw ConstructionError("custom spaces need an explicit root list");
    }
    const Mat gk = killing_gram(s.roots_.positive_roots, s.roots_.rank);
    const Mat gk_inv = gk.inverse();
    double min_dual = std::numeric_limits<double>::infinity();
    for (const auto& r : s.roots_.positive_roots)
        min_dual = std::min(min_dual, r.vector.dot(gk_inv * r.vector));
    s.metric_scale_ = min_dual;
    s.gram_ = norm == Normalization::killing ? gk : Mat(min_dual * gk);
    s.finalize();
    return s;
}

SymmetricSpace SymmetricSpace::custom(std::vector<Root> roots, std::optional<Mat> gram,
                                      Normalization norm, bool flags_given) {
    if (roots.empty()) throw ConstructionError("custom root list is empty");
    const int rank = static_cast<int>(roots.front().vector.size());
    if (rank < 1) throw ConstructionError("custom roots must have positive dimension");
    for (const auto& r : roots) {
        if (r.vector.size() != rank) throw ConstructionError("custom roots differ in dimension");
        if (!(r.vector.norm() > 0.0) || !r.vector.allFinite())
            throw ValidationError("root vectors must be nonzero and finite");
        if (r.multiplicity < 1) throw ValidationError("multiplicities must be positive integers");
    }
    // Only alpha and 2 alpha may coexist; the smaller is indivisible.
    std::vector<bool> divisible(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (i == j) continue;
            const double c = parallel_factor(roots[i].vector, roots[j].vector);
            if (c == 0.0) continue;
            if (c < 0.0)
                throw ValidationError("a root and its negative are both listed as positive");
            if (std::abs(c - 1.0) < 1e-10) throw ValidationError("duplicate root in list");
            if (std::abs(c - 2.0) < 1e-10) {
                divisible[j] = true;
            } else if (std::abs(c - 0.5) > 1e-10) {
                throw ValidationError("positive multiples other than alpha, 2 alpha are not allowed");
            }
        }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (flags_given && roots[i].indivisible == divisible[i])
            throw ValidationError("indivisibility flag inconsistent with the root list");
        roots[i].indivisible = !divisible[i];
    }

    SymmetricSpace s;
    s.family_ = Family::custom;
    s.size_ = rank;
    s.norm_ = norm;
    s.roots_.rank = rank;
    s.roots_.positive_roots = std::move(roots);
    s.coordinates_ = "custom";
    Mat base = gram ? *gram : killing_gram(s.roots_.positive_roots, rank);
    if (base.rows() != rank || base.cols() != rank)
        throw ConstructionError("gram has the wrong size");
    if (!positive_definite(base)) throw ConstructionError("gram must be symmetric positive definite");
    base = 0.5 * (base + base.transpose());
    const Mat base_inv = base.inverse();
    double min_dual = std::numeric_limits<double>::infinity();
    for (const auto& r : s.roots_.positive_roots)
        min_dual = std::min(min_dual, r.vector.dot(base_inv * r.vector));
    s.metric_scale_ = min_dual;
    s.gram_ = norm == Normalization::killing ? base : Mat(min_dual * base);
    s.finalize();
    return s;
}

void SymmetricSpace::finalize() {
    const int l = roots_.rank;
    gram_inv_ = gram_.inverse();
    gram_inv_ = 0.5 * (gram_inv_ + gram_inv_.transpose()).eval();
    rho_ = Vec::Zero(l);
    for (const auto& r : roots_.positive_roots) rho_ += 0.5 * r.multiplicity * r.vector;
    rho_norm_sq_ = rho_.dot(gram_inv_ * rho_);

    // Simple roots: indivisible roots that are not sums of two positive roots.
    const auto& rs = roots_.positive_roots;
    simple_.clear();
    if (family_ == Family::sl_n_r || family_ == Family::complex_sl_n) {
        for (std::size_t i = 0; i < rs.size(); ++i)
            if (std::abs(rs[i].vector.sum() - 1.0) < 1e-12) simple_.push_back(static_cast<int>(i));
    } else {
        auto key = [](const Vec& v) {
            std::vector<long long> k(v.size());
            for (int i = 0; i < v.size(); ++i) k[i] = std::llround(v[i] * 1e8);
            return k;
        };
        std::map<std::vector<long long>, int> index;
        for (std::size_t i = 0; i < rs.size(); ++i) index[key(rs[i].vector)] = static_cast<int>(i);
        std::vector<bool> decomposable(rs.size(), false);
        for (std::size_t a = 0; a < rs.size(); ++a)
            for (std::size_t b = a; b < rs.size(); ++b) {
                auto it = index.find(key(rs[a].vector + rs[b].vector));
                if (it != index.end()) decomposable[it->second] = true;
            }
        for (std::size_t i = 0; i < rs.size(); ++i)
            if (rs[i].indivisible && !decomposable[i]) simple_.push_back(static_cast<int>(i));
    }
    if (static_cast<int>(simple_.size()) != l)
        throw ValidationError("root list does not have rank-many simple roots");
    Mat simple(l, l);
    for (int k = 0; k < l; ++k) simple.col(k) = rs[simple_[k]].vector;
    Eigen::FullPivLU<Mat> lu(simple);
    if (!lu.isInvertible()) throw ValidationError("simple roots are linearly dependent");
    for (const auto& r : rs) {
        const Vec c = lu.solve(r.vector);
        for (int k = 0; k < l; ++k) {
            if (c[k] < -1e-9 || std::abs(c[k] - std::round(c[k])) > 1e-9)
                throw ValidationError(
                    "positive root is not a nonnegative integer combination of simple roots");
        }
    }
    for (int k = 0; k < l; ++k)
        if (!(rho_.dot(gram_inv_ * rs[simple_[k]].vector) > 0.0))
            throw ValidationError("rho is not dominant");
}

std::string SymmetricSpace::label() const {
    switch (family_) {
        case Family::sl_n_r: return "sl_" + std::to_string(size_) + "_r";
        case Family::hyperbolic: return "hyperbolic_" + std::to_string(size_);
        case Family::complex_sl_n: return "complex_sl_" + std::to_string(size_);
        case Family::custom: return "custom_rank_" + std::to_string(rank());
    }
    return "custom";
}

void SymmetricSpace::check_dim(const Vec& v, const char* what) const {
    if (v.size() != rank())
        throw DomainError(std::string(what) + " has dimension " + std::to_string(v.size()) +
                          ", expected rank " + std::to_string(rank()));
}

double SymmetricSpace::pairing(const Vec& covector, const Vec& H) const {
    check_dim(covector, "covector");
    check_dim(H, "H");
    return covector.dot(H);
}

namespace {
// Bilinear form summed over i <= k so that swapping the arguments is exact.
double symmetric_form(const Mat& g, const Vec& a, const Vec& b) {
    double total = 0.0;
    for (int i = 0; i < g.rows(); ++i) {
        total += g(i, i) * (a[i] * b[i]);
        for (int k = i + 1; k < g.rows(); ++k) total += g(i, k) * (a[i] * b[k] + a[k] * b[i]);
    }
    return total;
}
}  // namespace

double SymmetricSpace::inner(const Vec& H1, const Vec& H2) const {
    check_dim(H1, "H");
    check_dim(H2, "H");
    return symmetric_form(gram_, H1, H2);
}

double SymmetricSpace::norm(const Vec& H) const { return std::sqrt(std::max(0.0, inner(H, H))); }

double SymmetricSpace::dual_inner(const Vec& l1, const Vec& l2) const {
    check_dim(l1, "lambda");
    check_dim(l2, "lambda");
    return symmetric_form(gram_inv_, l1, l2);
}

double SymmetricSpace::dual_norm(const Vec& l) const {
    return std::sqrt(std::max(0.0, dual_inner(l, l)));
}

Vec SymmetricSpace::coroot(int root_index) const {
    const Vec& a = roots_.positive_roots.at(root_index).vector;
    const Vec ga = gram_inv_ * a;
    return 2.0 * ga / a.dot(ga);
}

Vec SymmetricSpace::reflect(int root_index, const Vec& H) const {
    check_dim(H, "H");
    return H - roots_.positive_roots.at(root_index).vector.dot(H) * coroot(root_index);
}

bool SymmetricSpace::in_closed_chamber(const Vec& H, double tol) const {
    check_dim(H, "H");
    const double scale = tol * (1.0 + H.cwiseAbs().maxCoeff());
    for (int k : simple_)
        if (roots_.positive_roots[k].vector.dot(H) < -scale) return false;
    return true;
}

bool SymmetricSpace::in_open_chamber(const Vec& H) const {
    check_dim(H, "H");
    for (int k : simple_)
        if (!(roots_.positive_roots[k].vector.dot(H) > 0.0)) return false;
    return true;
}

nlohmann::ordered_json SymmetricSpace::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = to_string(family_);
    j["size"] = size_;
    j["normalization"] = to_string(norm_);
    j["rank"] = rank();
    j["coordinates"] = coordinates_;
    auto roots = nlohmann::ordered_json::array();
    for (const auto& r : roots_.positive_roots) {
        nlohmann::ordered_json e;
        e["vector"] = std::vector<double>(r.vector.data(), r.vector.data() + r.vector.size());
        e["multiplicity"] = r.multiplicity;
        e["indivisible"] = r.indivisible;
        roots.push_back(e);
    }
    j["roots"] = roots;
    auto g = nlohmann::ordered_json::array();
    for (int i = 0; i < rank(); ++i) {
        std::vector<double> row(rank());
        for (int k = 0; k < rank(); ++k) row[k] = gram_(i, k);
        g.push_back(row);
    }
    j["gram"] = g;
    j["metric_scale"] = metric_scale_;
    return j;
}

SymmetricSpace SymmetricSpace::from_json(const nlohmann::json& doc) {
    try {
        const Family family = parse_family(doc.at("family").get<std::string>());
        const Normalization norm =
            parse_normalization(doc.value("normalization", std::string("killing")));
        if (family != Family::custom) {
            SymmetricSpace s = build(family, doc.at("size").get<int>(), norm);
            if (doc.contains("rank") && doc.at("rank").get<int>() != s.rank())
                throw ConstructionError("descriptor rank disagrees with its family");
            return s;
        }
        std::vector<Root> roots;
        bool flags_given = true;
        for (const auto& e : doc.at("roots")) {
            const auto v = e.at("vector").get<std::vector<double>>();
            Root r;
            r.vector = Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
            r.multiplicity = e.value("multiplicity", 1);
            if (e.contains("indivisible")) {
                r.indivisible = e.at("indivisible").get<bool>();
            } else {
                flags_given = false;
            }
            roots.push_back(r);
        }
        std::optional<Mat> gram;
        if (doc.contains("gram")) {
            const auto rows = doc.at("gram").get<std::vector<std::vector<double>>>();
            Mat g(rows.size(), rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != rows.size()) throw ConstructionError("gram must be square");
                for (std::size_t k = 0; k < rows.size(); ++k) g(i, k) = rows[i][k];
            }
            // A stored unit-curvature gram is already rescaled.
            if (norm == Normalization::unit_curvature) {
                SymmetricSpace s = custom(roots, g, Normalization::killing, flags_given);
                s.norm_ = Normalization::unit_curvature;
                s.metric_scale_ = doc.value("metric_scale", 1.0);
                return s;
            }
            gram = g;
        }
        return custom(roots, gram, norm, flags_given);
    } catch (const nlohmann::json::exception& e) {
        throw ConstructionError(std::string("malformed descriptor: ") + e.what());
    }
}

CartanVector make_cartan_vector(const SymmetricSpace& space, Vec coords) {
    CartanVector c;
    c.in_chamber = space.in_closed_chamber(coords);
    c.coords = std::move(coords);
    return c;
}

namespace {
void require_sl(const SymmetricSpace& space) {
    if (space.family() != Family::sl_n_r && space.family() != Family::complex_sl_n)
        throw CapabilityError("diagonal coordinates exist only for the sl_n families");
}
}  // namespace

Vec from_diagonal(const SymmetricSpace& space, const Vec& diagonal) {
    require_sl(space);
    const int n = space.size();
    if (diagonal.size() != n) throw DomainError("diagonal must have n entries");
    Vec h(n - 1);
    for (int k = 0; k + 1 < n; ++k) h[k] = diagonal[k] - diagonal[k + 1];
    return h;
}

Vec to_diagonal(const SymmetricSpace& space, const Vec& H) {
    require_sl(space);
    space.check_dim(H, "H");
    const int n = space.size();
    Vec d = Vec::Zero(n);
    for (int k = n - 2; k >= 0; --k) d[k] = d[k + 1] + H[k];
    d.array() -= d.mean();
    return d;
}

Vec root_ij(const SymmetricSpace& space, int i, int j) {
    require_sl(space);
    if (i < 1 || j > space.size() || i >= j) throw DomainError("alpha_ij needs 1 <= i < j <= n");
    Vec v = Vec::Zero(space.rank());
    for (int k = i - 1; k < j - 1; ++k) v[k] = 1.0;
    return v;
}

double trace_form_scale(const SymmetricSpace& space) {
    require_sl(space);
    // Killing gram 1/2 sum m (d_i - d_j)^2 = (m n / 2) Tr(d^2) on trace-zero diagonals.
    const int m = space.family() == Family::sl_n_r ? 1 : 2;
    const double killing = 0.5 * m * space.size();
    return space.normalization() == Normalization::killing ? killing
                                                           : killing * space.metric_scale();
}

double log_delta_density(const SymmetricSpace& space, const Vec& H) {
    if (!space.in_closed_chamber(H)) throw DomainError("H lies outside the closed positive chamber");
    double total = 0.0;
    for (const auto& r : space.roots()) {
        const double a = r.vector.dot(H);
        if (!(a > 0.0)) return -std::numeric_limits<double>::infinity();
        total += r.multiplicity * special::log_sinh(a);
    }
    return total;
}

double delta_density(const SymmetricSpace& space, const Vec& H) {
    const double l = log_delta_density(space, H);
    return std::isinf(l) && l < 0 ? 0.0 : std::exp(l);
}

double log_density_envelope(const SymmetricSpace& space, const Vec& H) {
    if (!space.in_closed_chamber(H)) throw DomainError("H lies outside the closed positive chamber");
    double total = 2.0 * space.rho().dot(H);
    for (const auto& r : space.roots()) {
        const double a = r.vector.dot(H);
        if (!(a > 0.0)) return -std::numeric_limits<double>::infinity();
        total += r.multiplicity * (std::log(a) - std::log1p(a));
    }
    return total;
}

DensitySandwich density_sandwich(const SymmetricSpace& space, const Vec& H) {
    const double l = log_density_envelope(space, H);
    DensitySandwich d;
    if (std::isinf(l)) {
        d.on_wall = true;
        return d;
    }
    d.lower = d.upper = std::exp(l);
    return d;
}

namespace {
std::vector<long long> orbit_key(const Vec& v, double scale) {
    std::vector<long long> key(v.size());
    for (int i = 0; i < v.size(); ++i) key[i] = std::llround(v[i] / (1e-9 * scale));
    return key;
}
}  // namespace

std::vector<Vec> weyl_orbit(const SymmetricSpace& space, const Vec& H, std::size_t max_size) {
    space.check_dim(H, "H");
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    std::set<std::vector<long long>> seen;
    std::vector<Vec> orbit;
    std::deque<Vec> queue;
    seen.insert(orbit_key(H, scale));
    orbit.push_back(H);
    queue.push_back(H);
    while (!queue.empty()) {
        const Vec cur = queue.front();
        queue.pop_front();
        for (int k : space.simple_roots()) {
            Vec next = space.reflect(k, cur);
            if (seen.insert(orbit_key(next, scale)).second) {
                if (orbit.size() >= max_size)
                    throw CapabilityError("Weyl orbit exceeds the size limit");
                orbit.push_back(next);
                queue.push_back(std::move(next));
            }
        }
    }
    return orbit;
}

bool is_dominant(const SymmetricSpace& space, const Vec& H, double tol) {
    return space.in_closed_chamber(H, tol);
}

std::vector<int> dominance_word(const SymmetricSpace& space, const Vec& H) {
    space.check_dim(H, "H");
    std::vector<int> word;
    Vec cur = H;
    const double tol = 1e-12 * (1.0 + H.cwiseAbs().maxCoeff());
    // Each simple reflection with negative pairing lowers the distance to the
    // chamber; the number of steps is bounded by the number of positive roots.
    for (std::size_t iter = 0; iter <= 4 * space.roots().size() + 4; ++iter) {
        int bad = -1;
        for (int k : space.simple_roots())
            if (space.roots()[k].vector.dot(cur) < -tol) {
                bad = k;
                break;
            }
        if (bad < 0) return word;
        cur = space.reflect(bad, cur);
        word.push_back(bad);
    }
    throw Error("dominance iteration did not terminate");
}

Vec dominant_representative(const SymmetricSpace& space, const Vec& H) {
    Vec cur = H;
    for (int k : dominance_word(space, H)) cur = space.reflect(k, cur);
    return cur;
}

}  // namespace symkit
