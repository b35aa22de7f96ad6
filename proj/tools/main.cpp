// main.cpp — entdyn command line: trajectory runs, disorder sweeps, critical
// parameter queries, and the verification suite, all through the C API of the
// shared library. Emits plot-ready CSV with deterministic formatting.
#include "entdyn/entdyn.h"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr const char* kTrajectoryHeader =
    "tau,r01,r02,r03,r10,r20,r30,r11,r12,r13,r21,r22,r23,r31,r32,r33,"
    "concurrence,trace_err,herm_err,min_eig";

// Bloch flat-array indices in CSV column order: the 0i row, the i0 column,
// then the 3x3 block row-major.
constexpr int kColumnIndex[15] = {1, 2, 3, 4, 8, 12, 5, 6, 7, 9, 10, 11, 13, 14, 15};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Effective {
    double kappa = 0.8;
    double omega0 = 5.0;
    double p1sq = 1.0;
    double p2sq = 1.0;
    double tmax = 1.0;
    double dt = 1e-3;
    long stride = 1;
    std::vector<double> sigma2;  // filled by merge; mode-dependent default
    std::string method = "rk4";
};

struct Flags {
    double kappa = 0.0, omega0 = 0.0, p1sq = 0.0, p2sq = 0.0, tmax = 0.0, dt = 0.0;
    long stride = 0;
    std::string sigma2, method, out, config, echo_config;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == nullptr || *end != '\0' || text.empty())
        throw ConfigError("invalid number for " + what + ": '" + text + "'");
    return v;
}

std::vector<double> parse_sigma_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        values.push_back(parse_double(item, "sigma2"));
    if (values.empty()) throw ConfigError("empty sigma2 list");
    return values;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("malformed config line: '" + stripped + "'");
        kv[trim(stripped.substr(0, eq))] = trim(stripped.substr(eq + 1));
    }
    return kv;
}

std::size_t count_opt(const CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return (opt != nullptr) ? opt->count() : 0;
}

// Precedence: command-line flags > config file > defaults.
Effective merge(const CLI::App* cmd, const Flags& flags, bool sweep_mode) {
    std::map<std::string, std::string> file;
    if (count_opt(cmd, "--config") > 0) file = read_config_file(flags.config);

    static const char* known[] = {"kappa", "omega0", "sigma2", "p1sq", "p2sq",
                                  "tmax",  "dt",     "stride", "method"};
    for (const auto& [key, value] : file) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown config key '" + key + "'");
    }

    Effective eff;
    auto pick_double = [&](const char* flag, const char* key, double flag_value,
                           double fallback) {
        if (count_opt(cmd, flag) > 0) return flag_value;
        if (auto it = file.find(key); it != file.end()) return parse_double(it->second, key);
        return fallback;
    };
    eff.kappa = pick_double("--kappa", "kappa", flags.kappa, eff.kappa);
    eff.omega0 = pick_double("--omega0", "omega0", flags.omega0, eff.omega0);
    eff.p1sq = pick_double("--p1sq", "p1sq", flags.p1sq, eff.p1sq);
    eff.p2sq = pick_double("--p2sq", "p2sq", flags.p2sq, eff.p2sq);
    eff.tmax = pick_double("--tmax", "tmax", flags.tmax, eff.tmax);
    eff.dt = pick_double("--dt", "dt", flags.dt, eff.dt);

    if (count_opt(cmd, "--stride") > 0)
        eff.stride = flags.stride;
    else if (auto it = file.find("stride"); it != file.end())
        eff.stride = static_cast<long>(parse_double(it->second, "stride"));

    if (count_opt(cmd, "--method") > 0)
        eff.method = flags.method;
    else if (auto it = file.find("method"); it != file.end())
        eff.method = it->second;
    if (eff.method != "rk4" && eff.method != "closed")
        throw ConfigError("method must be 'rk4' or 'closed', got '" + eff.method + "'");

    if (count_opt(cmd, "--sigma2") > 0)
        eff.sigma2 = parse_sigma_list(flags.sigma2);
    else if (auto it = file.find("sigma2"); it != file.end())
        eff.sigma2 = parse_sigma_list(it->second);
    else if (sweep_mode)
        eff.sigma2 = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
    else
        eff.sigma2 = {0.0};
    return eff;
}

void echo_config(const std::string& path, const Effective& eff) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write config echo to '" + path + "'");
    out << "kappa=" << fmt17(eff.kappa) << "\n";
    out << "omega0=" << fmt17(eff.omega0) << "\n";
    std::string list;
    for (std::size_t i = 0; i < eff.sigma2.size(); ++i)
        list += (i == 0 ? "" : ",") + fmt17(eff.sigma2[i]);
    out << "sigma2=" << list << "\n";
    out << "p1sq=" << fmt17(eff.p1sq) << "\n";
    out << "p2sq=" << fmt17(eff.p2sq) << "\n";
    out << "tmax=" << fmt17(eff.tmax) << "\n";
    out << "dt=" << fmt17(eff.dt) << "\n";
    out << "stride=" << eff.stride << "\n";
    out << "method=" << eff.method << "\n";
}

struct OutputStream {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw ConfigError("cannot open output file '" + path + "'");
            os = &file;
        }
    }
    std::ostream& get() { return *os; }
};

int status_to_exit(int status) {
    if (status == ENTDYN_OK) return 0;
    if (status == ENTDYN_ERR_REGIME) return 2;
    return 1;
}

[[noreturn]] void die(int status) {
    std::cerr << "error: " << entdyn_status_string(status);
    const char* detail = entdyn_last_error();
    if (detail != nullptr && detail[0] != '\0') std::cerr << ": " << detail;
    std::cerr << "\n";
    std::exit(status_to_exit(status));
}

void print_warnings(const entdyn_trajectory* traj) {
    size_t n = 0;
    entdyn_trajectory_warning_count(traj, &n);
    for (size_t i = 0; i < n; ++i)
        std::cerr << "warning: " << entdyn_trajectory_warning(traj, i) << "\n";
}

void write_samples(std::ostream& os, const entdyn_trajectory* traj,
                   const std::string& sigma2_prefix) {
    size_t count = 0;
    entdyn_trajectory_size(traj, &count);
    for (size_t i = 0; i < count; ++i) {
        entdyn_sample s;
        if (const int rc = entdyn_trajectory_sample(traj, i, &s); rc != ENTDYN_OK) die(rc);
        std::string line = sigma2_prefix;
        line += fmt17(s.tau);
        for (int idx : kColumnIndex) line += "," + fmt17(s.bloch[idx]);
        line += "," + fmt17(s.concurrence);
        line += "," + fmt17(s.trace_err);
        line += "," + fmt17(s.herm_err);
        line += "," + fmt17(s.min_eig);
        os << line << "\n";
    }
}

entdyn_trajectory* run_one(const Effective& eff, double sigma2) {
    entdyn_model* model = nullptr;
    int rc = entdyn_model_create(eff.omega0, eff.p1sq, eff.p2sq, sigma2, &model);
    if (rc != ENTDYN_OK) die(rc);
    entdyn_trajectory* traj = nullptr;
    const int method = (eff.method == "rk4") ? ENTDYN_METHOD_RK4 : ENTDYN_METHOD_CLOSED_FORM;
    rc = entdyn_model_run(model, eff.kappa, eff.tmax, eff.dt, eff.stride, method, &traj);
    entdyn_model_destroy(model);
    if (rc != ENTDYN_OK) die(rc);
    print_warnings(traj);
    return traj;
}

int cmd_trajectory(const CLI::App* cmd, const Flags& flags) {
    const Effective eff = merge(cmd, flags, false);
    if (eff.sigma2.size() != 1)
        throw ConfigError("trajectory mode takes a single sigma2 value");
    if (!flags.echo_config.empty()) echo_config(flags.echo_config, eff);

    entdyn_trajectory* traj = run_one(eff, eff.sigma2.front());
    OutputStream out(flags.out);
    out.get() << kTrajectoryHeader << "\n";
    write_samples(out.get(), traj, "");
    entdyn_trajectory_destroy(traj);
    return 0;
}

int cmd_sweep(const CLI::App* cmd, const Flags& flags) {
    const Effective eff = merge(cmd, flags, true);
    if (eff.sigma2.size() < 2)
        throw ConfigError("sweep mode needs at least two sigma2 values");
    if (!flags.echo_config.empty()) echo_config(flags.echo_config, eff);

    // Deterministic long format: sigma2 outer, tau inner, in the given order.
    OutputStream out(flags.out);
    out.get() << "sigma2," << kTrajectoryHeader << "\n";
    for (double s2 : eff.sigma2) {
        entdyn_trajectory* traj = run_one(eff, s2);
        write_samples(out.get(), traj, fmt17(s2) + ",");
        entdyn_trajectory_destroy(traj);
    }
    return 0;
}

int cmd_critical(const CLI::App* cmd, const Flags& flags) {
    const Effective eff = merge(cmd, flags, false);
    if (eff.sigma2.size() != 1)
        throw ConfigError("critical mode takes a single sigma2 value");
    if (!flags.echo_config.empty()) echo_config(flags.echo_config, eff);
    const double sigma2 = eff.sigma2.front();

    double critical = 0.0, bound = 0.0;
    int regime = 0;
    int rc = entdyn_critical_sigma(eff.omega0, &critical);
    if (rc != ENTDYN_OK) die(rc);
    rc = entdyn_cp_bound(eff.omega0, &bound);
    if (rc != ENTDYN_OK) die(rc);
    rc = entdyn_classify_regime(eff.omega0, sigma2, &regime);
    if (rc != ENTDYN_OK) die(rc);

    const char* label = (regime == ENTDYN_REGIME_CP_VALID)         ? "cp-valid"
                        : (regime == ENTDYN_REGIME_EXTENDED) ? "extended"
                                                                   : "out-of-model";
    OutputStream out(flags.out);
    out.get() << "omega0=" << fmt17(eff.omega0) << "\n"
              << "sigma_c2=" << fmt17(critical) << "\n"
              << "cp_bound=" << fmt17(bound) << "\n"
              << "sigma2=" << fmt17(sigma2) << "\n"
              << "regime=" << label << "\n";
    return 0;
}

extern "C" void report_check(const char* name, double measured, double tolerance, int pass,
                             void* user) {
    auto* os = static_cast<std::ostream*>(user);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %s measured=%.6e tolerance=%.6e",
                  pass != 0 ? "PASS" : "FAIL", name, measured, tolerance);
    *os << buf << "\n";
}

int cmd_verify(const Flags& flags) {
    OutputStream out(flags.out);
    const int rc = entdyn_verify_run(report_check, &out.get());
    if (rc == ENTDYN_OK) {
        out.get() << "verification passed\n";
        return 0;
    }
    out.get() << "verification FAILED\n";
    return 3;
}

void add_common_options(CLI::App* cmd, Flags& flags, bool with_physics) {
    if (with_physics) {
        cmd->add_option("--kappa", flags.kappa, "Werner state parameter in [-1/3, 1]");
        cmd->add_option("--p1sq", flags.p1sq, "squared dipole norm, atom 1");
        cmd->add_option("--p2sq", flags.p2sq, "squared dipole norm, atom 2");
        cmd->add_option("--tmax", flags.tmax, "proper-time horizon");
        cmd->add_option("--dt", flags.dt, "integrator step");
        cmd->add_option("--stride", flags.stride, "sampling stride in steps");
        cmd->add_option("--method", flags.method, "evolution method: rk4 or closed");
    }
    cmd->add_option("--omega0", flags.omega0, "transition frequency");
    cmd->add_option("--sigma2", flags.sigma2,
                    "disorder strength (comma-separated list in sweep mode)");
    cmd->add_option("--out", flags.out, "output path (default: stdout)");
    cmd->add_option("--config", flags.config, "key=value config file; flags override");
    cmd->add_option("--echo-config", flags.echo_config,
                    "write the effective configuration to this path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "entanglement dynamics of two qubits in separate cavities, one with "
        "light-cone disorder (natural units)"};
    app.require_subcommand(1);

    Flags flags;
    CLI::App* traj = app.add_subcommand("trajectory", "run one trajectory, write CSV");
    add_common_options(traj, flags, true);
    CLI::App* sweep = app.add_subcommand("sweep", "run a disorder sweep, write long CSV");
    add_common_options(sweep, flags, true);
    CLI::App* critical =
        app.add_subcommand("critical", "report critical disorder strength and regime");
    add_common_options(critical, flags, false);
    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--out", flags.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (traj->parsed()) return cmd_trajectory(traj, flags);
        if (sweep->parsed()) return cmd_sweep(sweep, flags);
        if (critical->parsed()) return cmd_critical(critical, flags);
        if (verify->parsed()) return cmd_verify(flags);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
