#include "cmarket/preferences.hpp"

#include "cmarket/csv.hpp"
#include "cmarket/kernels.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace cmarket {

PreferenceMatrix::PreferenceMatrix(std::size_t n_agents, std::size_t n_items, std::vector<double> values)
    : n_agents_{n_agents}, n_items_{n_items}, values_{std::move(values)} {
    if (n_agents_ == 0 || n_items_ == 0) throw ConfigError("preference matrix must be at least 1x1");
    if (values_.size() != n_agents_ * n_items_)
        throw ConfigError("preference matrix has " + std::to_string(values_.size()) + " entries, expected " +
                          std::to_string(n_agents_ * n_items_));
    for (double v : values_)
        if (!std::isfinite(v)) throw ConfigError("preference matrix entries must be finite");
}

PreferenceMatrix sample_preferences(std::size_t n_agents, std::size_t n_items, double sigma, RandomStream& rng) {
    if (!(sigma >= 0.0)) throw ConfigError("sigma must be non-negative");
    std::vector<double> values(n_agents * n_items);
    // sigma == 0 still consumes draws so the stream position does not depend on sigma.
    for (auto& v : values) v = sigma * rng.standard_normal();
    if (sigma == 0.0)
        for (auto& v : values) v = 0.0; // avoid -0.0 from 0 * negative draws
    return PreferenceMatrix(n_agents, n_items, std::move(values));
}

QualityVector quality(const PreferenceMatrix& prefs) {
    const auto& k = kernels::active();
    QualityVector q(prefs.n_items(), 0.0);
    for (std::size_t i = 0; i < prefs.n_agents(); ++i) {
        const auto row = prefs.row(AgentId{i});
        k.accumulate(q.data(), row.data(), q.size());
    }
    const double n = static_cast<double>(prefs.n_agents());
    for (auto& v : q) v /= n;
    return q;
}

void write_preferences_csv(std::ostream& out, const PreferenceMatrix& prefs) {
    for (std::size_t i = 0; i < prefs.n_agents(); ++i) {
        const auto row = prefs.row(AgentId{i});
        for (std::size_t a = 0; a < row.size(); ++a) {
            if (a) out << ',';
            out << format_number(row[a]);
        }
        out << '\n';
    }
}

PreferenceMatrix read_preferences_csv(std::istream& in) {
    std::vector<double> values;
    std::size_t n_items = 0;
    std::size_t n_agents = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t columns = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string_view cell = std::string_view(line).substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            values.push_back(parse_double(cell));
            ++columns;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (n_agents == 0) n_items = columns;
        else if (columns != n_items)
            throw ConfigError("preference CSV row " + std::to_string(n_agents + 1) + " has " +
                              std::to_string(columns) + " columns, expected " + std::to_string(n_items));
        ++n_agents;
    }
    if (n_agents == 0) throw ConfigError("preference CSV is empty");
    return PreferenceMatrix(n_agents, n_items, std::move(values));
}

} // namespace cmarket
