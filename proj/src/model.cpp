#include "eit4/model.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace eit4 {

namespace {

bool finite(complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void set_coupling(Matrix5& h, int row, int col, complex value)
{
    h(row, col) += value;
    h(col, row) += std::conj(value);
}

// Fix the global phase so that the largest component is real and positive.
Vector5 canonical_phase(const Vector5& v)
{
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    const complex pivot = v(k);
    if (std::abs(pivot) == 0.0)
        return v;
    return v * (std::abs(pivot) / pivot);
}

struct Eigenpair
{
    real value;
    Vector5 vector;
    real overlap;
    int cluster;
};

/*
 * Eigen-decomposition with each degenerate eigenspace rotated so that the
 * |4> amplitude is concentrated in a single basis vector.
 */
std::vector<Eigenpair> rotated_eigenpairs(const Matrix5& h, const DarkStateOptions& opts)
{
    Eigen::SelfAdjointEigenSolver<Matrix5> solver(h);
    if (solver.info() != Eigen::Success)
        throw SolverError("Hamiltonian diagonalization failed");
    const auto& values = solver.eigenvalues();
    const Matrix5& vectors = solver.eigenvectors();
    const real scale = std::max<real>(1.0, max_abs(h));

    std::vector<Eigenpair> out;
    int cluster = 0;
    for (int start = 0; start < kLevels;) {
        int stop = start + 1;
        while (stop < kLevels && values(stop) - values(stop - 1) <= opts.degeneracy_tolerance * scale)
            ++stop;
        const int k = stop - start;
        Eigen::MatrixXcd block = vectors.middleCols(start, k);
        if (k > 1) {
            Eigen::MatrixXcd excited = block.row(L4);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(excited, Eigen::ComputeFullV);
            block = block * svd.matrixV();
        }
        const real mean = values.segment(start, k).mean();
        for (int j = 0; j < k; ++j) {
            Vector5 v = block.col(j);
            v.normalize();
            out.push_back({k > 1 ? mean : values(start + j), v, std::abs(v(L4)), cluster});
        }
        ++cluster;
        start = stop;
    }
    return out;
}

Eigen::MatrixXcd dark_subspace(const DriveConfig& cfg, const DarkStateOptions& opts)
{
    std::vector<Vector5> dark;
    for (const auto& p : rotated_eigenpairs(build_hamiltonian(cfg), opts))
        if (p.overlap < opts.dark_tolerance)
            dark.push_back(p.vector);
    Eigen::MatrixXcd q(kLevels, static_cast<Eigen::Index>(dark.size()));
    for (std::size_t j = 0; j < dark.size(); ++j)
        q.col(static_cast<Eigen::Index>(j)) = dark[j];
    return q;
}

} // namespace

void DriveConfig::validate() const
{
    if (!std::isfinite(delta) || !std::isfinite(omega_c) || !finite(omega_r) || !finite(omega_r_prime)
        || !finite(omega_p) || !finite(omega_p_prime))
        throw ConfigError("drive configuration contains non-finite values");
    if (omega_c < 0.0)
        throw ConfigError("coupling Rabi frequency must be non-negative");
}

Vector5 DressedBasis::embed(const Vector3& v)
{
    Vector5 out = Vector5::Zero();
    out(L1) = v(0);
    out(L1p) = v(1);
    out(L3) = v(2);
    return out;
}

Matrix5 build_h0(const DriveConfig& cfg)
{
    cfg.validate();
    Matrix5 h = Matrix5::Zero();
    h(L2, L2) = cfg.delta;
    h(L4, L4) = cfg.delta;
    set_coupling(h, L3, L1, -0.5 * cfg.omega_r);
    set_coupling(h, L3, L1p, -0.5 * cfg.omega_r_prime);
    set_coupling(h, L4, L2, -0.5 * cfg.omega_c);
    return h;
}

Matrix5 build_probe_potential(const DriveConfig& cfg)
{
    cfg.validate();
    Matrix5 v = Matrix5::Zero();
    set_coupling(v, L4, L1, -0.5 * cfg.omega_p);
    set_coupling(v, L4, L1p, -0.5 * cfg.omega_p_prime);
    return v;
}

Matrix5 build_hamiltonian(const DriveConfig& cfg)
{
    return build_h0(cfg) + build_probe_potential(cfg);
}

real light_shift(const DriveConfig& cfg)
{
    return 0.5 * std::sqrt(std::norm(cfg.omega_r) + std::norm(cfg.omega_r_prime));
}

DressedBasis dressed_basis(const DriveConfig& cfg)
{
    cfg.validate();
    DressedBasis b;
    b.sigma = light_shift(cfg);
    if (!(b.sigma > 0.0))
        throw ConfigError("dressed basis undefined without rf field");

    const real two_sigma = 2.0 * b.sigma;
    const complex wr = cfg.omega_r / two_sigma;
    const complex wr_p = cfg.omega_r_prime / two_sigma;
    const real inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // (|+> + |->)/sqrt(2): the rf-coupled combination of |1>, |1'>
    Vector3 bright(std::conj(wr), std::conj(wr_p), 0.0);
    Vector3 upper(0.0, 0.0, 1.0);
    b.minus = inv_sqrt2 * (bright + upper);
    b.plus = inv_sqrt2 * (bright - upper);
    b.zero = Vector3(wr_p, -wr, 0.0);

    b.omega0 = (cfg.omega_p * cfg.omega_r_prime - cfg.omega_p_prime * cfg.omega_r) / two_sigma;
    b.omega = (cfg.omega_p * std::conj(cfg.omega_r) + cfg.omega_p_prime * std::conj(cfg.omega_r_prime))
              / two_sigma;
    return b;
}

std::string to_string(DarkKind kind)
{
    switch (kind) {
    case DarkKind::raman:
        return "raman";
    case DarkKind::non_raman:
        return "non_raman";
    case DarkKind::bright:
        return "bright";
    }
    return "bright";
}

std::size_t DarkStateReport::count(DarkKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [kind](const auto& r) { return r.kind == kind; }));
}

DarkStateReport find_dark_states(const DriveConfig& cfg, const DarkStateOptions& opts)
{
    if (!(opts.dark_tolerance > 0.0))
        throw ConfigError("dark_tolerance must be positive");
    cfg.validate();

    DarkStateReport report;
    if (cfg.probe_off())
        report.warnings.push_back("probe off: every eigenvector without |4> character is trivially dark");

    const auto pairs = rotated_eigenpairs(build_hamiltonian(cfg), opts);

    DriveConfig lower = cfg;
    DriveConfig upper = cfg;
    lower.delta -= opts.delta_probe_step;
    upper.delta += opts.delta_probe_step;
    const Eigen::MatrixXcd q_lower = dark_subspace(lower, opts);
    const Eigen::MatrixXcd q_upper = dark_subspace(upper, opts);
    const Eigen::MatrixXcd persist = 0.5 * (q_lower * q_lower.adjoint() + q_upper * q_upper.adjoint());

    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i;
        std::vector<Vector5> dark;
        while (j < pairs.size() && pairs[j].cluster == pairs[i].cluster) {
            if (pairs[j].overlap < opts.dark_tolerance) {
                dark.push_back(pairs[j].vector);
            } else {
                report.records.push_back(
                    {pairs[j].value, canonical_phase(pairs[j].vector), pairs[j].overlap, DarkKind::bright});
            }
            ++j;
        }
        if (!dark.empty()) {
            // Split the dark part of this eigenspace into directions that persist
            // under a detuning change (eigenvalue ~1) and those that do not.
            const auto m = static_cast<Eigen::Index>(dark.size());
            Eigen::MatrixXcd d(kLevels, m);
            for (Eigen::Index c = 0; c < m; ++c)
                d.col(c) = dark[static_cast<std::size_t>(c)];
            const Eigen::MatrixXcd overlap = d.adjoint() * persist * d;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> split(0.5 * (overlap + overlap.adjoint()));
            const Eigen::MatrixXcd rotated = d * split.eigenvectors();
            for (Eigen::Index c = 0; c < m; ++c) {
                Vector5 v = rotated.col(c);
                v.normalize();
                const DarkKind kind = split.eigenvalues()(c) > 0.999 ? DarkKind::non_raman : DarkKind::raman;
                report.records.push_back({pairs[i].value, canonical_phase(v), std::abs(v(L4)), kind});
            }
        }
        i = j;
    }

    std::stable_sort(report.records.begin(), report.records.end(),
                     [](const auto& a, const auto& b) { return a.eigenvalue < b.eigenvalue; });
    return report;
}

} // namespace eit4
