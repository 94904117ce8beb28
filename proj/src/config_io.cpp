#include "nomapop/config_io.hpp"

#include "nomapop/error.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace nomapop {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text)
{
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw Error(ErrorKind::InvalidInput,
                    "value for '" + std::string(key) + "' is not a number: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

void set_field(SystemConfig& config, std::string_view key, std::string_view value)
{
    const double x = parse_double(key, trim(value));
    if (key == "d1") {
        config.d1 = x;
    } else if (key == "d2") {
        config.d2 = x;
    } else if (key == "path_loss_constant") {
        config.path_loss_constant = x;
    } else if (key == "path_loss_exponent") {
        config.path_loss_exponent = x;
    } else if (key == "rho_t_db") {
        config.rho_t_db = x;
    } else if (key == "beta") {
        config.beta = x;
    } else if (key == "r1_th") {
        config.r1_th = x;
    } else if (key == "r2_th") {
        config.r2_th = x;
    } else if (key == "pt_dbm") {
        config.pt_dbm = x;
    } else if (key == "noise_dbm") {
        config.noise_dbm = x;
    } else {
        throw Error(ErrorKind::InvalidInput, "unknown configuration key '" + std::string(key) + "'");
    }
}

SystemConfig parse_config(std::istream& in)
{
    SystemConfig config;
    std::set<std::string, std::less<>> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::InvalidInput,
                        "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(view.substr(0, eq));
        if (!seen.emplace(key).second) {
            throw Error(ErrorKind::InvalidInput,
                        "line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
        }
        set_field(config, key, view.substr(eq + 1));
    }
    config.validate();
    return config;
}

SystemConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::InvalidInput, "cannot open configuration file '" + path.string() + "'");
    }
    return parse_config(in);
}

std::string format_number(double x)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

std::string describe(const SystemConfig& c)
{
    std::ostringstream os;
    os << "d1=" << format_number(c.d1) << " d2=" << format_number(c.d2)
       << " path_loss_constant=" << format_number(c.path_loss_constant)
       << " path_loss_exponent=" << format_number(c.path_loss_exponent)
       << " rho_t_db=" << format_number(c.rho_t_db) << " beta=" << format_number(c.beta)
       << " r1_th=" << format_number(c.r1_th) << " r2_th=" << format_number(c.r2_th);
    if (c.pt_dbm) {
        os << " pt_dbm=" << format_number(*c.pt_dbm);
    }
    if (c.noise_dbm) {
        os << " noise_dbm=" << format_number(*c.noise_dbm);
    }
    return os.str();
}

}  // namespace nomapop
