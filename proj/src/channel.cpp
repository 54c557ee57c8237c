#include "qmp/channel.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qmp/errors.hpp"

namespace qmp::channel {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

using json = nlohmann::json;

std::complex<double> draw_cn(std::mt19937_64& rng, double variance) {
    std::normal_distribution<double> n01(0.0, 1.0);
    const double s = std::sqrt(variance / 2.0);
    const double re = s * n01(rng);
    const double im = s * n01(rng);
    return {re, im};
}

json cvec_to_json(const VectorXcd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back({v[i].real(), v[i].imag()});
    }
    return arr;
}

VectorXcd cvec_from_json(const json& arr) {
    VectorXcd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = {arr[i][0].get<double>(), arr[i][1].get<double>()};
    }
    return v;
}

}  // namespace

double distance(const Point2D& a, const Point2D& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double bearing(const Point2D& from, const Point2D& to) {
    return std::atan2(to.y - from.y, to.x - from.x);
}

double NetworkGeometry::wavelength() const { return kSpeedOfLight / carrier_freq; }

double NetworkGeometry::spacing() const {
    if (element_spacing < 0.0) throw ParameterError("geometry: element_spacing must be >= 0");
    return element_spacing > 0.0 ? element_spacing : wavelength() / 2.0;
}

double NetworkGeometry::decay() const {
    if (decay_const < 0.0) throw ParameterError("geometry: decay_const must be >= 0");
    return decay_const > 0.0 ? decay_const : spacing();
}

void NetworkGeometry::validate() const {
    if (n_elements < 1) throw ValidationError("geometry.n_elements must be >= 1");
    if (n_antennas < 1) throw ValidationError("geometry.n_antennas must be >= 1");
    if (n_users < 1) throw ValidationError("geometry.n_users must be >= 1");
    if (carrier_freq <= 0.0) throw ValidationError("geometry.carrier_freq must be > 0");
    if (element_spacing < 0.0) throw ValidationError("geometry.element_spacing must be >= 0");
    if (decay_const < 0.0) throw ValidationError("geometry.decay_const must be >= 0");
    if (!ue_positions.empty() && static_cast<int>(ue_positions.size()) != n_users) {
        throw ValidationError("geometry.ue_positions size != n_users");
    }
    if (distance(ris_position, ap_position) <= 0.0) {
        throw ValidationError("geometry.ap_position coincides with ris_position");
    }
    for (const auto& p : ue_positions) {
        if (distance(p, ris_position) <= 0.0) {
            throw ValidationError("geometry.ue_positions contains a UE at the RIS position");
        }
    }
}

void LinkBudget::validate() const {
    if (tx_power.empty()) throw ValidationError("budget.tx_power is empty");
    for (double p : tx_power) {
        if (p <= 0.0) throw ValidationError("budget.tx_power entries must be > 0");
    }
    if (noise_power <= 0.0) throw ValidationError("budget.noise_power must be > 0");
}

VectorXcd steering_vector(int n_points, double angle) {
    if (n_points < 1) throw ParameterError("steering_vector: n_points must be >= 1");
    VectorXcd a(n_points);
    const double phase_step = std::numbers::pi * std::sin(angle);
    for (int m = 0; m < n_points; ++m) {
        a[m] = std::polar(1.0, phase_step * m);
    }
    return a;
}

MatrixXd coupling_matrix(const NetworkGeometry& geometry) {
    const double d0 = geometry.decay();
    if (d0 <= 0.0) throw ParameterError("coupling_matrix: decay constant must be > 0");
    const double dn = geometry.spacing();
    const int n = geometry.n_elements;
    MatrixXd c(n, n);
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k <= m; ++k) {
            const double d = std::abs(m - k) * dn;
            const double v = std::exp(-d / d0);
            c(m, k) = v;
            c(k, m) = v;
        }
    }
    return c;
}

double pathloss(double distance_m, double carrier_freq_hz) {
    if (distance_m <= 0.0) throw ParameterError("pathloss: distance must be > 0");
    if (carrier_freq_hz <= 0.0) throw ParameterError("pathloss: carrier frequency must be > 0");
    const double lambda = kSpeedOfLight / carrier_freq_hz;
    const double amp = lambda / (4.0 * std::numbers::pi * distance_m);
    return amp * amp;
}

ChannelSet generate_channels(const NetworkGeometry& geometry, const ChannelParams& params,
                             std::uint64_t rng_seed) {
    geometry.validate();
    if (params.kappa_ue < 0.0 || params.kappa_ap < 0.0) {
        throw ParameterError("generate_channels: Rician K-factors must be >= 0");
    }
    if (static_cast<int>(params.beta_ue.size()) != geometry.n_users) {
        throw ShapeError("generate_channels: beta_ue size != n_users");
    }
    for (double b : params.beta_ue) {
        if (b <= 0.0) throw ParameterError("generate_channels: beta_ue entries must be > 0");
    }
    if (params.beta_ap <= 0.0) throw ParameterError("generate_channels: beta_ap must be > 0");

    const int n = geometry.n_elements;
    const int q = geometry.n_antennas;
    const int k_users = geometry.n_users;

    ChannelSet chs;
    chs.n_elements = n;
    chs.n_antennas = q;
    chs.n_users = k_users;
    chs.params = params;
    chs.coupling = coupling_matrix(geometry);

    std::mt19937_64 rng(rng_seed);

    // UE -> RIS links, one Rician vector per user.
    const double los_ue = std::sqrt(params.kappa_ue / (1.0 + params.kappa_ue));
    const double nlos_ue = std::sqrt(1.0 / (1.0 + params.kappa_ue));
    chs.h_ue_ris.reserve(k_users);
    chs.aoa_ris_from_ue.reserve(k_users);
    for (int k = 0; k < k_users; ++k) {
        const double theta = geometry.ue_positions.empty()
                                 ? 0.0
                                 : bearing(geometry.ris_position, geometry.ue_positions[k]);
        chs.aoa_ris_from_ue.push_back(theta);
        const VectorXcd los = steering_vector(n, theta);
        VectorXcd h(n);
        const double scale = std::sqrt(params.beta_ue[k]);
        for (int m = 0; m < n; ++m) {
            h[m] = scale * (los_ue * los[m] + nlos_ue * draw_cn(rng, 1.0));
        }
        chs.h_ue_ris.push_back(std::move(h));
    }

    // RIS -> AP link: rank-1 LoS outer product plus iid scattering.
    chs.aod_ris_to_ap = bearing(geometry.ris_position, geometry.ap_position);
    chs.aoa_ap_from_ris = bearing(geometry.ap_position, geometry.ris_position);
    const VectorXcd a_ris = steering_vector(n, chs.aod_ris_to_ap);
    const VectorXcd a_ap = steering_vector(q, chs.aoa_ap_from_ris);
    const double los_ap = std::sqrt(params.kappa_ap / (1.0 + params.kappa_ap));
    const double nlos_ap = std::sqrt(1.0 / (1.0 + params.kappa_ap));
    const double scale_ap = std::sqrt(params.beta_ap);
    chs.h_ris_ap.resize(n, q);
    for (int m = 0; m < n; ++m) {
        for (int j = 0; j < q; ++j) {
            const std::complex<double> los = a_ris[m] * std::conj(a_ap[j]);
            chs.h_ris_ap(m, j) = scale_ap * (los_ap * los + nlos_ap * draw_cn(rng, 1.0));
        }
    }
    return chs;
}

VectorXcd effective_channel(const ChannelSet& chs, const PhaseVector& phases, int user) {
    if (user < 0 || user >= chs.n_users) {
        throw ShapeError("effective_channel: user index out of range");
    }
    if (static_cast<int>(phases.size()) != chs.n_elements) {
        throw ShapeError("effective_channel: phase vector length " +
                         std::to_string(phases.size()) + " != n_elements " +
                         std::to_string(chs.n_elements));
    }
    VectorXcd reflected(chs.n_elements);
    for (int m = 0; m < chs.n_elements; ++m) {
        reflected[m] = std::polar(1.0, phases.phases[m]) * chs.h_ue_ris[user][m];
    }
    const VectorXcd coupled = chs.coupling * reflected;
    return chs.h_ris_ap.adjoint() * coupled;
}

double sinr(const ChannelSet& chs, const PhaseVector& phases, const LinkBudget& budget, int user) {
    budget.validate();
    if (static_cast<int>(budget.tx_power.size()) != chs.n_users) {
        throw ShapeError("sinr: tx_power size != n_users");
    }
    double signal = 0.0;
    double interference = 0.0;
    for (int i = 0; i < chs.n_users; ++i) {
        const double gain = effective_channel(chs, phases, i).squaredNorm() * budget.tx_power[i];
        if (i == user) {
            signal = gain;
        } else {
            interference += gain;
        }
    }
    return signal / (interference + budget.noise_power);
}

double spectral_efficiency(const ChannelSet& chs, const PhaseVector& phases,
                           const LinkBudget& budget) {
    budget.validate();
    if (static_cast<int>(budget.tx_power.size()) != chs.n_users) {
        throw ShapeError("spectral_efficiency: tx_power size != n_users");
    }
    // One effective-channel evaluation per user, reused across all SINRs.
    std::vector<double> gains(chs.n_users);
    for (int i = 0; i < chs.n_users; ++i) {
        gains[i] = effective_channel(chs, phases, i).squaredNorm() * budget.tx_power[i];
    }
    double total = 0.0;
    for (int k = 0; k < chs.n_users; ++k) {
        double interference = 0.0;
        for (int i = 0; i < chs.n_users; ++i) {
            if (i != k) interference += gains[i];
        }
        total += std::log2(1.0 + gains[k] / (interference + budget.noise_power));
    }
    return total;
}

double energy_cost(const PhaseVector& phases) {
    if (phases.size() == 0) return 0.0;
    double acc = 0.0;
    for (double phi : phases.phases) acc += 1.0 - std::cos(phi);
    return acc / static_cast<double>(phases.size());
}

double objective(const ChannelSet& chs, const PhaseVector& phases, const LinkBudget& budget,
                 double alpha1, double alpha2) {
    if (alpha1 < 0.0 || alpha2 < 0.0) {
        throw ParameterError("objective: weighting factors must be >= 0");
    }
    return alpha1 * spectral_efficiency(chs, phases, budget) - alpha2 * energy_cost(phases);
}

ChannelSet inject_csi_error(const ChannelSet& chs, double error_variance,
                            std::uint64_t rng_seed) {
    if (error_variance < 0.0) {
        throw ParameterError("inject_csi_error: variance must be >= 0");
    }
    if (error_variance == 0.0) return chs;

    ChannelSet out = chs;
    std::mt19937_64 rng(rng_seed);
    for (auto& h : out.h_ue_ris) {
        for (Eigen::Index m = 0; m < h.size(); ++m) h[m] += draw_cn(rng, error_variance);
    }
    for (Eigen::Index m = 0; m < out.h_ris_ap.rows(); ++m) {
        for (Eigen::Index j = 0; j < out.h_ris_ap.cols(); ++j) {
            out.h_ris_ap(m, j) += draw_cn(rng, error_variance);
        }
    }
    return out;
}

std::string channel_to_json(const ChannelSet& chs) {
    json doc;
    doc["n_elements"] = chs.n_elements;
    doc["n_antennas"] = chs.n_antennas;
    doc["n_users"] = chs.n_users;
    doc["kappa_ue"] = chs.params.kappa_ue;
    doc["kappa_ap"] = chs.params.kappa_ap;
    doc["beta_ue"] = chs.params.beta_ue;
    doc["beta_ap"] = chs.params.beta_ap;
    doc["aoa_ris_from_ue"] = chs.aoa_ris_from_ue;
    doc["aoa_ap_from_ris"] = chs.aoa_ap_from_ris;
    doc["aod_ris_to_ap"] = chs.aod_ris_to_ap;

    json ue = json::array();
    for (const auto& h : chs.h_ue_ris) ue.push_back(cvec_to_json(h));
    doc["h_ue_ris"] = ue;

    json ap = json::array();
    for (Eigen::Index m = 0; m < chs.h_ris_ap.rows(); ++m) {
        ap.push_back(cvec_to_json(chs.h_ris_ap.row(m).transpose()));
    }
    doc["h_ris_ap"] = ap;

    json coup = json::array();
    for (Eigen::Index m = 0; m < chs.coupling.rows(); ++m) {
        json row = json::array();
        for (Eigen::Index k = 0; k < chs.coupling.cols(); ++k) row.push_back(chs.coupling(m, k));
        coup.push_back(row);
    }
    doc["coupling"] = coup;
    return doc.dump(2);
}

ChannelSet channel_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("channel_from_json: ") + e.what());
    }
    ChannelSet chs;
    chs.n_elements = doc.at("n_elements").get<int>();
    chs.n_antennas = doc.at("n_antennas").get<int>();
    chs.n_users = doc.at("n_users").get<int>();
    chs.params.kappa_ue = doc.at("kappa_ue").get<double>();
    chs.params.kappa_ap = doc.at("kappa_ap").get<double>();
    chs.params.beta_ue = doc.at("beta_ue").get<std::vector<double>>();
    chs.params.beta_ap = doc.at("beta_ap").get<double>();
    chs.aoa_ris_from_ue = doc.at("aoa_ris_from_ue").get<std::vector<double>>();
    chs.aoa_ap_from_ris = doc.at("aoa_ap_from_ris").get<double>();
    chs.aod_ris_to_ap = doc.at("aod_ris_to_ap").get<double>();

    for (const auto& row : doc.at("h_ue_ris")) chs.h_ue_ris.push_back(cvec_from_json(row));

    const auto& ap = doc.at("h_ris_ap");
    chs.h_ris_ap.resize(chs.n_elements, chs.n_antennas);
    for (int m = 0; m < chs.n_elements; ++m) {
        const VectorXcd row = cvec_from_json(ap[m]);
        chs.h_ris_ap.row(m) = row.transpose();
    }

    const auto& coup = doc.at("coupling");
    chs.coupling.resize(chs.n_elements, chs.n_elements);
    for (int m = 0; m < chs.n_elements; ++m) {
        for (int k = 0; k < chs.n_elements; ++k) {
            chs.coupling(m, k) = coup[m][k].get<double>();
        }
    }
    return chs;
}

void save_channels(const ChannelSet& chs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("save_channels: cannot open " + path);
    out << channel_to_json(chs);
}

ChannelSet load_channels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_channels: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return channel_from_json(buf.str());
}

}  // namespace qmp::channel
