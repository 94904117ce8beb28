#include "nomapop/model.hpp"

#include "nomapop/error.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace nomapop {

namespace {

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw Error(ErrorKind::InvalidInput, message);
    }
}

// numerator / (denominator * rho_t); +inf unless the denominator is positive.
GainThreshold threshold(double numerator, double denominator, double rho_t)
{
    if (!(denominator > 0.0)) {
        return {};
    }
    return {numerator / (denominator * rho_t)};
}

}  // namespace

int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::NotDifferentiable:
        return 1;
    case ErrorKind::ValidationFailure:
        return 2;
    case ErrorKind::NoFeasibleAllocation:
        return 3;
    }
    return 1;
}

void SystemConfig::validate() const
{
    auto finite = [](double x) { return std::isfinite(x); };
    require(finite(d1) && d1 > 0.0, "d1 must be a positive distance");
    require(finite(d2) && d2 > 0.0, "d2 must be a positive distance");
    require(finite(path_loss_constant) && path_loss_constant > 0.0, "path_loss_constant must be positive");
    require(finite(path_loss_exponent) && path_loss_exponent > 0.0, "path_loss_exponent must be positive");
    require(finite(rho_t_db), "rho_t_db must be finite");
    require(finite(beta) && beta >= 0.0 && beta <= 1.0, "beta must lie in [0, 1]");
    require(finite(r1_th) && r1_th > 0.0, "r1_th must be positive");
    require(finite(r2_th) && r2_th > 0.0, "r2_th must be positive");
    require(d1 <= d2, "near user must not be farther than the far user (d1 <= d2)");
    if (pt_dbm) {
        require(finite(*pt_dbm), "pt_dbm must be finite");
    }
    if (noise_dbm) {
        require(finite(*noise_dbm), "noise_dbm must be finite");
    }
    if (pt_dbm && noise_dbm) {
        const double implied = *pt_dbm - *noise_dbm;
        if (std::abs(implied - rho_t_db) > 1e-9) {
            std::ostringstream os;
            os.precision(17);
            os << "rho_t_db = " << rho_t_db << " disagrees with pt_dbm - noise_dbm = " << implied;
            throw Error(ErrorKind::InvalidInput, os.str());
        }
    }
}

SystemConfig default_config()
{
    SystemConfig config;
    config.noise_dbm = -90.0;
    config.pt_dbm = config.rho_t_db + *config.noise_dbm;
    return config;
}

SystemConfig with_snr_db(SystemConfig config, double rho_t_db)
{
    config.rho_t_db = rho_t_db;
    if (config.noise_dbm) {
        config.pt_dbm = rho_t_db + *config.noise_dbm;
    } else if (config.pt_dbm) {
        config.pt_dbm.reset();
    }
    return config;
}

double db_to_linear(double x_db)
{
    return std::pow(10.0, x_db / 10.0);
}

double mean_gain(double d, double lp, double e)
{
    if (!(d > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "distance must be positive");
    }
    if (!(lp > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "path loss constant must be positive");
    }
    return lp * std::pow(d, -e);
}

double pi_threshold(double r_th)
{
    return std::exp2(r_th) - 1.0;
}

SinrTuple sinrs(double alpha, double g1, double g2, double beta, double rho_t)
{
    const double noise = 1.0 / rho_t;
    SinrTuple s;
    s.gamma21 = (1.0 - alpha) * g1 / (alpha * g1 + noise);
    s.gamma12 = alpha * g2 / ((1.0 - alpha) * g2 + noise);
    s.gamma11 = alpha * g1 / ((1.0 - alpha) * beta * g1 + noise);
    s.gamma22 = (1.0 - alpha) * g2 / (alpha * beta * g2 + noise);
    return s;
}

double rate(double gamma)
{
    return std::log2(1.0 + gamma);
}

ZetaTuple zetas(double alpha, const DerivedParams& d)
{
    const double pi1 = d.pi1;
    const double pi2 = d.pi2;
    const double beta = d.beta;
    ZetaTuple z;
    z.zeta1 = threshold(pi1, alpha - beta * (1.0 - alpha) * pi1, d.rho_t);
    z.zeta2 = threshold(pi2, 1.0 - alpha - alpha * pi2, d.rho_t);
    z.zeta3 = threshold(pi1, alpha - (1.0 - alpha) * pi1, d.rho_t);
    z.zeta4 = threshold(pi2, 1.0 - alpha - beta * alpha * pi2, d.rho_t);
    return z;
}

Breakpoints breakpoints(double pi1, double pi2, double beta)
{
    Breakpoints b;
    b.alpha1 = beta * pi1 / (1.0 + beta * pi1);
    b.alpha2 = pi1 * (1.0 + pi2 * beta) / (pi2 * (1.0 + pi1 * beta) + pi1 * (1.0 + pi2));
    b.alpha3 = 1.0 / (1.0 + pi2);
    b.alpha4 = pi1 / (1.0 + pi1);
    b.alpha5 = pi1 * (1.0 + pi2) / (pi2 * (1.0 + pi1) + pi1 * (1.0 + beta * pi2));
    b.alpha6 = 1.0 / (1.0 + beta * pi2);
    return b;
}

DerivedParams derive(const SystemConfig& config)
{
    config.validate();
    DerivedParams d;
    d.lambda1 = mean_gain(config.d1, config.path_loss_constant, config.path_loss_exponent);
    d.lambda2 = mean_gain(config.d2, config.path_loss_constant, config.path_loss_exponent);
    d.rho_t = db_to_linear(config.rho_t_db);
    d.pi1 = pi_threshold(config.r1_th);
    d.pi2 = pi_threshold(config.r2_th);
    d.beta = config.beta;
    d.breakpoints = breakpoints(d.pi1, d.pi2, d.beta);
    return d;
}

std::array<DecodingOrder, 4> enumerate_decoding_orders()
{
    // Column m lists the decoding sequence of U_{m+1}.
    return {{
        {1, {{{2, 1}, {2, 1}}}},
        {2, {{{2, 1}, {1, 2}}}},
        {3, {{{1, 2}, {2, 1}}}},
        {4, {{{1, 2}, {1, 2}}}},
    }};
}

}  // namespace nomapop
