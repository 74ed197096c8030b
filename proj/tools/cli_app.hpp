#ifndef VLCSEC_CLI_APP_HPP
#define VLCSEC_CLI_APP_HPP

#include <stdexcept>
#include <string>

#include "vlcsec/channel.hpp"

namespace vlcsec::cli {

struct scenario {
    lambertian_params lam;
    geometry bob_geom;
    geometry eve_geom;
    noise_params noise_B;
    noise_params noise_E;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, int line);
    int line() const { return line_; }

private:
    int line_;
};

// Flat key = value format, '#' comments; every key required exactly once.
scenario parse_scenario_file(const std::string& path);

// 12 significant digits, the fixed width of every CSV float in this tool.
std::string format_csv_value(double v);

int run(int argc, char** argv);

} // namespace vlcsec::cli

#endif
