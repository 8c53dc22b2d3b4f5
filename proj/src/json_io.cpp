#include "qmod/json_io.hpp"

#include <json.hpp>

#include "qmod/errors.hpp"

namespace qmod {

using nlohmann::json;

namespace {

long grid_factor(const QSeries& s, long exp_den_override) {
    if (exp_den_override == 0) return 1;
    if (exp_den_override < s.exp_den() || exp_den_override % s.exp_den() != 0)
        throw BadInput("exp_den override " + std::to_string(exp_den_override) +
                       " is not a multiple of the series grid " + std::to_string(s.exp_den()));
    return exp_den_override / s.exp_den();
}

} // namespace

std::string to_json(const QSeries& s, bool pretty, long exp_den_override) {
    long f = grid_factor(s, exp_den_override);
    json coeffs = json::array();
    // densify to step 1 on the (possibly overridden) grid
    long step = s.step() * f;
    long n = s.size() ? static_cast<long>(s.size() - 1) * step + 1 : 0;
    for (long off = 0; off < n; ++off) {
        Rational v(0);
        if (off % step == 0) {
            std::size_t i = static_cast<std::size_t>(off / step);
            if (i < s.size()) v = s.coeffs()[i];
        }
        coeffs.push_back(json::array({num_string(v), den_string(v)}));
    }
    json out{{"exp_den", s.exp_den() * f},
             {"lead_exp", s.lead_exp() * f},
             {"trunc", s.trunc() * f},
             {"coeffs", coeffs}};
    return pretty ? out.dump(2) : out.dump();
}

QSeries qseries_from_json(const std::string& text) {
    json in = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (in.is_discarded()) throw BadInput("invalid JSON");
    auto need = [&](const char* key) -> const json& {
        auto it = in.find(key);
        if (it == in.end()) throw BadInput(std::string("missing JSON key '") + key + "'");
        return *it;
    };
    auto as_long = [](const json& v, const char* what) -> long {
        if (v.is_number_integer()) return v.get<long>();
        if (v.is_string()) return to_long(Int(v.get<std::string>()));
        throw BadInput(std::string("expected integer for ") + what);
    };
    long exp_den = as_long(need("exp_den"), "exp_den");
    long lead = as_long(need("lead_exp"), "lead_exp");
    long trunc = as_long(need("trunc"), "trunc");
    const json& cj = need("coeffs");
    if (!cj.is_array()) throw BadInput("coeffs must be an array");
    std::vector<Rational> coeffs;
    coeffs.reserve(cj.size());
    for (const auto& e : cj) {
        if (!e.is_array() || e.size() != 2) throw BadInput("each coefficient must be [num, den]");
        auto get_str = [](const json& v) -> std::string {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_number_integer()) return std::to_string(v.get<long long>());
            throw BadInput("coefficient parts must be decimal strings");
        };
        coeffs.push_back(rational_from_strings(get_str(e[0]), get_str(e[1])));
    }
    return QSeries::from_dense(exp_den, lead, trunc, std::move(coeffs));
}

std::string to_csv(const QSeries& s, long exp_den_override) {
    long f = grid_factor(s, exp_den_override);
    std::string out = "exp_num,exp_den,coeff_num,coeff_den\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        long e = (s.lead_exp() + static_cast<long>(i) * s.step()) * f;
        const Rational& v = s.coeffs()[i];
        out += std::to_string(e) + "," + std::to_string(s.exp_den() * f) + "," + num_string(v) +
               "," + den_string(v) + "\n";
    }
    return out;
}

} // namespace qmod
