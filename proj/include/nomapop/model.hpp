#pragma once

// Two-user downlink NOMA with imperfect SIC: system parameters, channel
// statistics, SINRs under the "decode the other user first" order, and the
// per-allocation gain thresholds and breakpoints that the outage analysis is
// built on.

#include <array>
#include <limits>
#include <optional>

namespace nomapop {

/// Physical and protocol parameters of one user pair.
///
/// U1 is the near (strong on average) user, U2 the far one. `rho_t_db` is the
/// transmit SNR Pt/sigma^2; when both `pt_dbm` and `noise_dbm` are given they
/// must agree with it.
struct SystemConfig {
    double d1 = 50.0;
    double d2 = 100.0;
    double path_loss_constant = 1.0;
    double path_loss_exponent = 3.0;
    double rho_t_db = 60.0;
    double beta = 0.2;
    double r1_th = 0.1;
    double r2_th = 0.1;
    std::optional<double> pt_dbm;
    std::optional<double> noise_dbm;

    /// Throws Error(InvalidInput) on the first violated constraint.
    void validate() const;
};

/// Reference operating point: d1 = 50 m, d2 = 100 m, Lp = 1, e = 3,
/// noise -90 dBm, 60 dB transmit SNR, beta = 0.2, both thresholds 0.1 b/s/Hz.
SystemConfig default_config();

/// Copy of `config` at a new transmit SNR. A configured noise floor is kept
/// and the transmit power follows it.
SystemConfig with_snr_db(SystemConfig config, double rho_t_db);

/// Power-fraction breakpoints. 1-3 bound the near user's conditions
/// (zeta1 feasibility, zeta1/zeta2 crossover, zeta2 feasibility), 4-6 the far
/// user's (zeta3 feasibility, zeta3/zeta4 crossover, zeta4 feasibility).
struct Breakpoints {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 0.0;
    double alpha4 = 0.0;
    double alpha5 = 0.0;
    double alpha6 = 0.0;

    std::array<double, 6> as_array() const { return {alpha1, alpha2, alpha3, alpha4, alpha5, alpha6}; }
};

/// Everything the closed-form analysis needs, computed once per configuration.
struct DerivedParams {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double rho_t = 0.0;
    double pi1 = 0.0;
    double pi2 = 0.0;
    double beta = 0.0;
    Breakpoints breakpoints;
};

/// Validates `config` and computes its derived parameters.
DerivedParams derive(const SystemConfig& config);

/// SINRs of the second decoding order. gamma_nm is the SINR at U_m when
/// decoding U_n's message.
struct SinrTuple {
    double gamma21 = 0.0;
    double gamma12 = 0.0;
    double gamma11 = 0.0;
    double gamma22 = 0.0;
};

/// SIC schedule of both users. `columns[m][k]` is the user (1 or 2) whose
/// message U_{m+1} decodes at stage k+1.
struct DecodingOrder {
    int order_index = 0;
    std::array<std::array<int, 2>, 2> columns{};
};

/// Minimum channel power gain for one SINR condition. An infeasible
/// condition (nonpositive denominator) is represented by +infinity.
struct GainThreshold {
    double value = std::numeric_limits<double>::infinity();

    bool feasible() const { return value < std::numeric_limits<double>::infinity(); }
};

struct ZetaTuple {
    GainThreshold zeta1;  // Gamma11 > pi1 at U1
    GainThreshold zeta2;  // Gamma21 > pi2 at U1
    GainThreshold zeta3;  // Gamma12 > pi1 at U2
    GainThreshold zeta4;  // Gamma22 > pi2 at U2
};

double db_to_linear(double x_db);

/// Mean exponential channel power gain lp * d^-e.
double mean_gain(double d, double lp, double e);

/// SINR threshold 2^r - 1 equivalent to a rate threshold r.
double pi_threshold(double r_th);

SinrTuple sinrs(double alpha, double g1, double g2, double beta, double rho_t);

/// Shannon rate log2(1 + gamma) in b/s/Hz.
double rate(double gamma);

ZetaTuple zetas(double alpha, const DerivedParams& derived);

Breakpoints breakpoints(double pi1, double pi2, double beta);

std::array<DecodingOrder, 4> enumerate_decoding_orders();

}  // namespace nomapop
