#include "windex/json_io.hpp"

#include <cctype>
#include <fstream>
#include <vector>

namespace windex::io {

namespace {

cplx pair_to_cplx(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(path + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json cplx_to_pair(cplx v) { return json::array({v.real(), v.imag()}); }

int parse_int_key(const std::string& key, const std::string& path) {
    try {
        size_t pos = 0;
        const int v = std::stoi(key, &pos);
        if (pos != key.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(path + ": exponent key '" + key + "' is not a decimal integer");
    }
}

Angle parse_theta(const json& j, const std::string& path) {
    if (j.is_number()) return Angle(j.get<double>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Angle(std::stod(s));
            return Angle(Rational(std::stoll(s.substr(0, slash)),
                                  std::stoll(s.substr(slash + 1))));
        } catch (const std::exception&) {
            throw ParseError(path + ": theta '" + s + "' is neither a number nor p/q");
        }
    }
    throw ParseError(path + ": theta must be a number or a string");
}

}  // namespace

json centre_to_json(const CentreElement& c) {
    json j;
    j["model"] = to_string(c.model());
    switch (c.model()) {
        case CentreModel::Scalar:
            j["re"] = c.values()[0].real();
            j["im"] = c.values()[0].imag();
            break;
        case CentreModel::FinitePoints: {
            json vals = json::array();
            for (const auto& v : c.values()) vals.push_back(cplx_to_pair(v));
            j["values"] = std::move(vals);
            break;
        }
        case CentreModel::CircleLaurent: {
            json coeffs = json::object();
            for (const auto& [p, v] : c.coeffs())  // std::map: ascending exponents
                coeffs[std::to_string(p)] = cplx_to_pair(v);
            j["coeffs"] = std::move(coeffs);
            break;
        }
    }
    return j;
}

CentreElement centre_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("model") || !j["model"].is_string())
        throw ParseError(path + ": expected object with string field 'model'");
    const std::string model = j["model"].get<std::string>();
    if (model == "scalar") {
        if (!j.contains("re") || !j.contains("im"))
            throw ParseError(path + ": scalar needs 're' and 'im'");
        return CentreElement::scalar({j["re"].get<double>(), j["im"].get<double>()});
    }
    if (model == "finite") {
        if (!j.contains("values") || !j["values"].is_array() || j["values"].empty())
            throw ParseError(path + ": finite needs nonempty array 'values'");
        std::vector<cplx> vals;
        int i = 0;
        for (const auto& v : j["values"])
            vals.push_back(pair_to_cplx(v, path + ".values[" + std::to_string(i++) + "]"));
        return CentreElement::finite(std::move(vals));
    }
    if (model == "laurent") {
        if (!j.contains("coeffs") || !j["coeffs"].is_object())
            throw ParseError(path + ": laurent needs object 'coeffs'");
        std::map<int, cplx> coeffs;
        for (const auto& [key, v] : j["coeffs"].items())
            coeffs[parse_int_key(key, path + ".coeffs")] =
                pair_to_cplx(v, path + ".coeffs." + key);
        return CentreElement::laurent(std::move(coeffs));
    }
    throw ParseError(path + ".model: unknown model '" + model + "'");
}

json context_to_json(const AlgebraContext& ctx) {
    json j;
    j["cocycle"] = to_string(ctx.cocycle);
    if (ctx.cocycle == Cocycle::Torus)
        j["theta"] = ctx.theta.exact ? json(ctx.theta.exact->str()) : json(ctx.theta.value);
    j["eta"] = centre_to_json(ctx.eta);
    return j;
}

AlgebraContext context_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("cocycle") || !j["cocycle"].is_string())
        throw ParseError(path + ": expected object with string field 'cocycle'");
    const std::string c = j["cocycle"].get<std::string>();
    Cocycle cocycle;
    if (c == "trivial")
        cocycle = Cocycle::Trivial;
    else if (c == "torus")
        cocycle = Cocycle::Torus;
    else if (c == "heisenberg")
        cocycle = Cocycle::Heisenberg;
    else
        throw ParseError(path + ".cocycle: unknown cocycle '" + c + "'");
    if (!j.contains("eta")) throw ParseError(path + ": missing 'eta'");
    CentreElement eta = centre_from_json(j["eta"], path + ".eta");
    Angle theta;
    if (cocycle == Cocycle::Torus) {
        if (!j.contains("theta")) throw ParseError(path + ": torus cocycle needs 'theta'");
        theta = parse_theta(j["theta"], path);
    }
    try {
        return AlgebraContext(cocycle, std::move(eta), theta);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

json twisted_to_json(const TwistedElement& a) {
    json j;
    j["context"] = context_to_json(a.context());
    json terms = json::array();
    for (const auto& [k, c] : a.coeffs()) {  // map ordering = lexicographic (n, m)
        json term;
        term["n"] = k.first;
        term["m"] = k.second;
        term["coeff"] = centre_to_json(c);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

TwistedElement twisted_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("context"))
        throw ParseError(path + ": expected object with 'context'");
    AlgebraContext ctx = context_from_json(j["context"], path + ".context");
    if (!j.contains("terms") || !j["terms"].is_array())
        throw ParseError(path + ": missing array 'terms'");
    std::map<TwistedElement::Key, CentreElement> coeffs;
    int i = 0;
    for (const auto& t : j["terms"]) {
        const std::string tp = path + ".terms[" + std::to_string(i++) + "]";
        if (!t.is_object() || !t.contains("n") || !t.contains("m") || !t.contains("coeff"))
            throw ParseError(tp + ": expected {n, m, coeff}");
        if (!t["n"].is_number_integer() || !t["m"].is_number_integer())
            throw ParseError(tp + ": n and m must be integers");
        const TwistedElement::Key key{t["n"].get<int>(), t["m"].get<int>()};
        CentreElement c = centre_from_json(t["coeff"], tp + ".coeff");
        auto [it, inserted] = coeffs.try_emplace(key, std::move(c));
        if (!inserted)
            throw ParseError(tp + ": duplicate (n,m) = (" + std::to_string(key.first) + "," +
                             std::to_string(key.second) + ")");
    }
    try {
        return TwistedElement(std::move(ctx), std::move(coeffs));
    } catch (const ModelMismatch& e) {
        throw ParseError(path + ": " + e.what());
    }
}

toeplitz::BandedToeplitz banded_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_object())
        throw ParseError(path + ": expected object with 'coeffs'");
    std::map<int, cplx> coeffs;
    for (const auto& [key, v] : j["coeffs"].items())
        coeffs[parse_int_key(key, path + ".coeffs")] =
            pair_to_cplx(v, path + ".coeffs." + key);
    return toeplitz::BandedToeplitz(std::move(coeffs));
}

json banded_to_json(const toeplitz::BandedToeplitz& t) {
    json coeffs = json::object();
    for (const auto& [p, v] : t.symbol) coeffs[std::to_string(p)] = cplx_to_pair(v);
    json j;
    j["coeffs"] = std::move(coeffs);
    return j;
}

toeplitz::GridSymbol grid_symbol_from_json(const json& j, double mu,
                                           const std::string& path) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw ParseError(path + ": expected object with array 'terms'");
    toeplitz::GridSymbol f;
    f.mu = mu;
    int i = 0;
    for (const auto& t : j["terms"]) {
        const std::string tp = path + ".terms[" + std::to_string(i++) + "]";
        if (!t.contains("n") || !t.contains("m")) throw ParseError(tp + ": needs n and m");
        toeplitz::GridSymbol::Term term;
        term.n = t["n"].get<int>();
        term.m = t["m"].get<int>();
        term.coeff = {t.value("re", 1.0), t.value("im", 0.0)};
        f.terms.push_back(term);
    }
    return f;
}

toeplitz::GridSymbol grid_symbol_from_expr(const std::string& expr, double mu) {
    // Sums of monomials in z and w: "z^2*w", "w - z^-1", "1", "2.5*z".
    toeplitz::GridSymbol f;
    f.mu = mu;
    size_t i = 0;
    const auto skip_ws = [&] { while (i < expr.size() && std::isspace(expr[i])) ++i; };
    skip_ws();
    bool first = true;
    while (i < expr.size()) {
        double sign = 1.0;
        skip_ws();
        if (expr[i] == '+' || expr[i] == '-') {
            sign = expr[i] == '-' ? -1.0 : 1.0;
            ++i;
        } else if (!first) {
            throw ParseError("symbol expression: expected '+' or '-' at position " +
                             std::to_string(i));
        }
        first = false;
        toeplitz::GridSymbol::Term term;
        term.coeff = sign;
        bool saw_factor = false;
        while (true) {
            skip_ws();
            if (i >= expr.size()) break;
            if (std::isdigit(expr[i]) || expr[i] == '.') {
                size_t len = 0;
                term.coeff *= std::stod(expr.substr(i), &len);
                i += len;
                saw_factor = true;
            } else if (expr[i] == 'z' || expr[i] == 'w') {
                const char var = expr[i++];
                int power = 1;
                skip_ws();
                if (i < expr.size() && expr[i] == '^') {
                    ++i;
                    skip_ws();
                    size_t len = 0;
                    power = std::stoi(expr.substr(i), &len);
                    i += len;
                }
                (var == 'z' ? term.n : term.m) += power;
                saw_factor = true;
            } else {
                break;
            }
            skip_ws();
            if (i < expr.size() && expr[i] == '*') {
                ++i;
                continue;
            }
            if (i < expr.size() && (std::isdigit(expr[i]) || expr[i] == 'z' || expr[i] == 'w'))
                continue;  // implicit product
            break;
        }
        if (!saw_factor)
            throw ParseError("symbol expression: empty term at position " + std::to_string(i));
        f.terms.push_back(term);
        skip_ws();
    }
    if (f.terms.empty()) throw ParseError("symbol expression: no terms");
    return f;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace windex::io
