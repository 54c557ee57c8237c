#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmp/phases.hpp"

namespace qmp::channel {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point2D& a, const Point2D& b);

// atan2 of the coordinate difference from -> to.
double bearing(const Point2D& from, const Point2D& to);

// Uplink layout: K single-antenna UEs -> RIS (N elements, uniform linear,
// spacing d_N) -> AP (Q antennas).
struct NetworkGeometry {
    int n_elements = 100;     // N
    int n_antennas = 64;      // Q
    int n_users = 4;          // K
    double carrier_freq = 28e9;
    double element_spacing = 0.0;   // d_N; 0 means lambda/2 at carrier_freq
    double decay_const = 0.0;       // d_0; 0 means equal to element_spacing
    Point2D ris_position{0.0, 0.0};
    Point2D ap_position{100.0, 100.0};
    std::vector<Point2D> ue_positions;

    double wavelength() const;
    double spacing() const;  // element_spacing resolved against lambda/2 default
    double decay() const;    // decay_const resolved against spacing default
    void validate() const;   // throws ValidationError naming the bad field
};

struct LinkBudget {
    std::vector<double> tx_power;  // watts, per user
    double noise_power = 1e-12;    // watts

    void validate() const;
};

// Rician/path-gain inputs to channel generation. beta_ue has one linear
// power gain per user; beta_ap is shared by all AP antennas.
struct ChannelParams {
    double kappa_ue = 10.0;
    double kappa_ap = 10.0;
    std::vector<double> beta_ue;
    double beta_ap = 1.0;
};

// One realization of the two-hop channel plus the coupling model.
struct ChannelSet {
    int n_elements = 0;
    int n_antennas = 0;
    int n_users = 0;
    std::vector<VectorXcd> h_ue_ris;  // per user, length N
    MatrixXcd h_ris_ap;               // N x Q
    MatrixXd coupling;                // N x N, symmetric, unit diagonal
    ChannelParams params;
    std::vector<double> aoa_ris_from_ue;  // per user, radians
    double aoa_ap_from_ris = 0.0;
    double aod_ris_to_ap = 0.0;
};

// Entry m = exp(j*pi*m*sin(angle)); half-wavelength uniform linear array.
VectorXcd steering_vector(int n_points, double angle);

// [C]_{m,n} = exp(-d_{m,n}/d_0) over the uniform linear element layout.
MatrixXd coupling_matrix(const NetworkGeometry& geometry);

// Free-space gain (lambda / 4*pi*d)^2.
double pathloss(double distance_m, double carrier_freq_hz);

// Rician draw: h = sqrt(beta) * (sqrt(k/(1+k)) * LoS + sqrt(1/(1+k)) * NLoS),
// NLoS entries iid CN(0,1). Deterministic given seed.
ChannelSet generate_channels(const NetworkGeometry& geometry, const ChannelParams& params,
                             std::uint64_t rng_seed);

// h_{k,q} = h_ris_ap^H * (C * diag(e^{j phi})) * h_ue_ris[k].
VectorXcd effective_channel(const ChannelSet& chs, const PhaseVector& phases, int user);

// ||h_k||^2 p_k / (sum_{i != k} ||h_i||^2 p_i + sigma^2).
double sinr(const ChannelSet& chs, const PhaseVector& phases, const LinkBudget& budget, int user);

// sum_k log2(1 + SINR_k), bps/Hz.
double spectral_efficiency(const ChannelSet& chs, const PhaseVector& phases,
                           const LinkBudget& budget);

// (1/N) sum_n (1 - cos phi_n), in [0, 2].
double energy_cost(const PhaseVector& phases);

// alpha1 * spectral_efficiency - alpha2 * energy_cost.
double objective(const ChannelSet& chs, const PhaseVector& phases, const LinkBudget& budget,
                 double alpha1, double alpha2);

// Adds iid CN(0, sigma_e^2) to every channel entry; deterministic given seed.
ChannelSet inject_csi_error(const ChannelSet& chs, double error_variance, std::uint64_t rng_seed);

// JSON golden-file format: complex entries as [re, im] pairs.
std::string channel_to_json(const ChannelSet& chs);
ChannelSet channel_from_json(const std::string& text);
void save_channels(const ChannelSet& chs, const std::string& path);
ChannelSet load_channels(const std::string& path);

}  // namespace qmp::channel
