#include "airel/sim.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "airel/numeric.hpp"

namespace airel::sim {

namespace {

// Cumulative hazard H(t) of the configured spec; gap sampling inverts
// H(v + X) - H(v) = -ln U on the life-stretched clock.
double cumulative_hazard(const HazardSpec& spec, double t) {
    if (const auto* e = std::get_if<ExponentialHazard>(&spec)) return e->rate * t;
    if (const auto* w = std::get_if<WeibullHazard>(&spec)) return std::pow(t / w->scale, w->shape);
    const auto& b = std::get<BathtubSpec>(spec);
    return std::pow(t / b.early_scale, b.early_shape) + b.constant_rate * t +
           std::pow(t / b.wear_scale, b.wear_shape);
}

double sample_gap(const HazardSpec& spec, double virtual_age, double life_scale, Rng& rng) {
    double e = -std::log(rng.uniform01());
    double v = virtual_age / life_scale;
    if (const auto* ex = std::get_if<ExponentialHazard>(&spec))
        return life_scale * e / ex->rate;  // memoryless
    if (const auto* w = std::get_if<WeibullHazard>(&spec)) {
        // Conditional inverse: X = eta*((v/eta)^beta + e)^(1/beta) - v.
        double x = w->scale * std::pow(std::pow(v / w->scale, w->shape) + e, 1 / w->shape) - v;
        return life_scale * x;
    }
    double target = cumulative_hazard(spec, v) + e;
    double root = numeric::increasing_root(
        [&](double u) { return cumulative_hazard(spec, u) - target; }, v, v + 1);
    return life_scale * (root - v);
}

void validate(const SimConfig& config) {
    if (!(config.window_days > 0))
        throw Error(Errc::bad_sim_config, "window_days must be positive");
    if (config.replications == 0)
        throw Error(Errc::bad_sim_config, "replications must be at least 1");
    if (const auto* e = std::get_if<ExponentialHazard>(&config.hazard)) {
        if (!(e->rate > 0)) throw Error(Errc::bad_sim_config, "hazard rate must be positive");
    } else if (const auto* w = std::get_if<WeibullHazard>(&config.hazard)) {
        if (!(w->shape > 0) || !(w->scale > 0))
            throw Error(Errc::bad_sim_config, "weibull shape and scale must be positive");
    } else {
        const auto& b = std::get<BathtubSpec>(config.hazard);
        life::make_bathtub(b.early_shape, b.early_scale, b.constant_rate, b.wear_shape,
                           b.wear_scale);  // reuse its validation
    }
    if (const auto* r = std::get_if<BetterThanOld>(&config.repair)) {
        if (!(r->rho >= 0 && r->rho <= 1))
            throw Error(Errc::bad_sim_config, "repair rho must lie in [0, 1]");
    } else if (const auto* g = std::get_if<BetterThanNew>(&config.repair)) {
        if (!(g->growth > 0)) throw Error(Errc::bad_sim_config, "repair growth must be positive");
    }
    if (const auto* c = std::get_if<ConstantDowntime>(&config.downtime)) {
        if (c->hours < 0) throw Error(Errc::bad_sim_config, "downtime hours must be non-negative");
    } else {
        const auto& l = std::get<LognormalDowntime>(config.downtime);
        if (!(l.log_sd > 0)) throw Error(Errc::bad_sim_config, "downtime log-sd must be positive");
    }
}

}  // namespace

Replication simulate_replication(const SimConfig& config, std::size_t index) {
    validate(config);
    Rng rng = Rng::for_replication(config.seed, index);
    Replication rep;
    double t = 0;           // operating clock, days
    double virtual_age = 0; // Kijima virtual age, days
    double life_scale = 1;  // better-than-new stretch factor
    for (;;) {
        double gap = sample_gap(config.hazard, virtual_age, life_scale, rng);
        if (t + gap > config.window_days) break;  // censored at the window end
        t += gap;
        double downtime;
        if (const auto* c = std::get_if<ConstantDowntime>(&config.downtime))
            downtime = c->hours;
        else {
            const auto& l = std::get<LognormalDowntime>(config.downtime);
            downtime = life::sample_lognormal(rng, l.log_mean, l.log_sd);
        }
        rep.events.push_back({t, downtime});

        if (std::holds_alternative<GoodAsNew>(config.repair)) {
            virtual_age = 0;
        } else if (const auto* r = std::get_if<BetterThanOld>(&config.repair)) {
            virtual_age = r->rho * (virtual_age + gap);
        } else {
            virtual_age = 0;
            life_scale *= 1 + std::get<BetterThanNew>(config.repair).growth;
        }
    }
    return rep;
}

SimHistory simulate(const SimConfig& config) {
    validate(config);
    SimHistory history;
    history.window_days = config.window_days;
    history.seed = config.seed;
    for (std::size_t i = 0; i < config.replications; ++i)
        history.replications.push_back(simulate_replication(config, i));
    return history;
}

double SimHistory::mean_count() const {
    if (replications.empty()) return 0;
    double total = 0;
    for (const Replication& r : replications) total += static_cast<double>(r.events.size());
    return total / static_cast<double>(replications.size());
}

double SimHistory::mean_downtime_hours() const {
    double total = 0;
    std::size_t n = 0;
    for (const Replication& r : replications)
        for (const SimEvent& e : r.events) {
            total += e.downtime_hours;
            ++n;
        }
    return n == 0 ? 0 : total / static_cast<double>(n);
}

double expected_count_nhpp(double shape, double scale, double t) {
    if (!(shape > 0) || !(scale > 0))
        throw Error(Errc::domain_error, "power-law shape and scale must be positive");
    if (t < 0) throw Error(Errc::domain_error, "expected count needs t >= 0");
    if (t == 0) return 0;
    return std::pow(t / scale, shape);
}

std::vector<double> inject_drift_stream(std::size_t length, std::size_t onset_index,
                                        double shift_sigmas, Rng& rng) {
    std::vector<double> stream(length);
    for (std::size_t i = 0; i < length; ++i) {
        stream[i] = life::sample_normal(rng, 0, 1);
        if (i >= onset_index) stream[i] += shift_sigmas;
    }
    return stream;
}

SimConfig parse_sim_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        std::size_t e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::bad_config, "line " + std::to_string(line_no) + ": expected key=value");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }

    auto get_num = [&](const std::string& key, double fallback, bool required = false) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            if (required) throw Error(Errc::bad_config, "missing key '" + key + "'");
            return fallback;
        }
        try {
            std::size_t used = 0;
            double v = std::stod(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw Error(Errc::bad_config, "key '" + key + "' is not a number: " + it->second);
        }
    };
    auto get_str = [&](const std::string& key, const std::string& fallback) {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };

    SimConfig config;
    std::string hazard = get_str("hazard", "exponential");
    if (hazard == "exponential") {
        config.hazard = ExponentialHazard{get_num("rate", 0.1)};
    } else if (hazard == "weibull") {
        config.hazard = WeibullHazard{get_num("shape", 1, true), get_num("scale", 1, true)};
    } else if (hazard == "bathtub") {
        config.hazard = BathtubSpec{get_num("early_shape", 0.5), get_num("early_scale", 1),
                                    get_num("constant_rate", 0), get_num("wear_shape", 3),
                                    get_num("wear_scale", 1)};
    } else {
        throw Error(Errc::bad_config, "unknown hazard '" + hazard + "'");
    }

    std::string repair = get_str("repair", "good_as_new");
    if (repair == "good_as_new")
        config.repair = GoodAsNew{};
    else if (repair == "better_than_old")
        config.repair = BetterThanOld{get_num("rho", 0.5, true)};
    else if (repair == "better_than_new")
        config.repair = BetterThanNew{get_num("growth", 0.1, true)};
    else
        throw Error(Errc::bad_config, "unknown repair '" + repair + "'");

    std::string downtime = get_str("downtime", "constant");
    if (downtime == "constant")
        config.downtime = ConstantDowntime{get_num("downtime_hours", 0)};
    else if (downtime == "lognormal")
        config.downtime = LognormalDowntime{get_num("downtime_log_mean", 0),
                                            get_num("downtime_log_sd", 1)};
    else
        throw Error(Errc::bad_config, "unknown downtime '" + downtime + "'");

    config.window_days = get_num("window_days", 100);
    double reps = get_num("replications", 1);
    if (!(reps >= 1)) throw Error(Errc::bad_sim_config, "replications must be at least 1");
    config.replications = static_cast<std::size_t>(reps);
    config.seed = static_cast<std::uint64_t>(get_num("seed", 0));
    validate(config);
    return config;
}

std::string history_to_csv(const SimHistory& history) {
    std::ostringstream out;
    out << "replication,epoch_days,downtime_hours\n";
    char buf[64];
    for (std::size_t i = 0; i < history.replications.size(); ++i) {
        for (const SimEvent& e : history.replications[i].events) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g", i, e.epoch_days, e.downtime_hours);
            out << buf << "\n";
        }
    }
    return out.str();
}

}  // namespace airel::sim
