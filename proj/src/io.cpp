#include "vmlp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "vmlp/errors.hpp"

namespace vmlp {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.what() carries the line/column of the failure.
        throw ValidationError(origin + ": " + e.what());
    }
}

const json& require_key(const json& obj, const char* key, const std::string& origin) {
    if (!obj.is_object()) throw ValidationError(origin + ": expected a JSON object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(origin + ": missing key \"" + std::string(key) + "\"");
    return *it;
}

double require_number(const json& v, const std::string& what, const std::string& origin) {
    if (!v.is_number()) throw ValidationError(origin + ": " + what + " must be a number");
    return v.get<double>();
}

std::vector<double> require_number_array(const json& v, const std::string& what,
                                         const std::string& origin) {
    if (!v.is_array()) throw ValidationError(origin + ": " + what + " must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& e : v) out.push_back(require_number(e, what + " entry", origin));
    return out;
}

Algebra algebra_from_json(const json& doc, const std::string& origin) {
    const json& dim_v = require_key(doc, "dim", origin);
    if (!dim_v.is_number_integer())
        throw ValidationError(origin + ": \"dim\" must be an integer");
    const int n = dim_v.get<int>();
    if (n < 1) throw ValidationError(origin + ": \"dim\" must be >= 1");

    const json& constants = require_key(doc, "constants", origin);
    if (!constants.is_array() || static_cast<int>(constants.size()) != n)
        throw ValidationError(origin + ": \"constants\" must be a " + std::to_string(n) +
                              "-element array of rows");
    std::vector<double> flat(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i) {
        const json& row = constants[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ValidationError(origin + ": \"constants\"[" + std::to_string(i) + "] must have " +
                                  std::to_string(n) + " columns");
        for (int j = 0; j < n; ++j) {
            const json& cell = row[j];
            if (!cell.is_array() || static_cast<int>(cell.size()) != n)
                throw ValidationError(origin + ": \"constants\"[" + std::to_string(i) + "][" +
                                      std::to_string(j) + "] must have " + std::to_string(n) +
                                      " components");
            for (int k = 0; k < n; ++k)
                flat[(static_cast<std::size_t>(i) * n + j) * n + k] =
                    require_number(cell[k], "structure constant", origin);
        }
    }

    std::vector<std::string> labels;
    if (auto it = doc.find("labels"); it != doc.end()) {
        if (!it->is_array() || static_cast<int>(it->size()) != n)
            throw ValidationError(origin + ": \"labels\" must have one entry per basis element");
        for (const json& l : *it) {
            if (!l.is_string()) throw ValidationError(origin + ": \"labels\" entries must be strings");
            labels.push_back(l.get<std::string>());
        }
    }
    std::string name;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw ValidationError(origin + ": \"name\" must be a string");
        name = it->get<std::string>();
    }
    return new_algebra(n, flat, labels, name);
}

json algebra_json(const Algebra& a) {
    const int n = a.dim();
    json constants = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j) {
            json cell = json::array();
            for (int k = 0; k < n; ++k) cell.push_back(a.constant(i, j, k));
            row.push_back(std::move(cell));
        }
        constants.push_back(std::move(row));
    }
    json doc;
    doc["dim"] = n;
    doc["constants"] = std::move(constants);
    if (!a.labels().empty()) doc["labels"] = a.labels();
    if (!a.name().empty()) doc["name"] = a.name();
    return doc;
}

bool is_catalog_name(const std::string& name) {
    for (const std::string& c : catalog_names())
        if (c == name) return true;
    return false;
}

} // namespace

Algebra parse_algebra_json(const std::string& text, const std::string& origin) {
    return algebra_from_json(parse_json(text, origin), origin);
}

Algebra load_algebra_json(const std::string& path) {
    return parse_algebra_json(read_text(path), path);
}

std::string algebra_to_json(const Algebra& a) {
    return algebra_json(a).dump(2) + "\n";
}

void save_checkpoint(const VMlp& net, const std::string& path) {
    json doc;
    const Algebra& a = net.algebra();
    if (!a.name().empty() && is_catalog_name(a.name()) && catalog(a.name()).same_as(a)) {
        doc["algebra"] = {{"name", a.name()}, {"dim", a.dim()}};
    } else {
        doc["algebra"] = algebra_json(a);
    }
    doc["n_inputs"] = net.n_inputs();
    doc["n_hidden"] = net.n_hidden();
    doc["output_mode"] = output_mode_name(net.output_mode());
    doc["activation"] = activation_name(net.activation());

    const std::span<const double> params = net.params();
    const std::size_t n = static_cast<std::size_t>(a.dim());
    const std::size_t wcount = static_cast<std::size_t>(net.n_hidden()) * net.n_inputs() * n;
    const std::size_t bcount = static_cast<std::size_t>(net.n_hidden()) * n;
    doc["hidden_weights"] = std::vector<double>(params.begin(), params.begin() + wcount);
    doc["hidden_biases"] =
        std::vector<double>(params.begin() + wcount, params.begin() + wcount + bcount);
    doc["output_weights"] = std::vector<double>(params.begin() + wcount + bcount, params.end());
    write_text_atomic(path, doc.dump(2) + "\n");
}

VMlp load_checkpoint(const std::string& path) {
    const json doc = parse_json(read_text(path), path);
    const json& alg = require_key(doc, "algebra", path);
    Algebra a = [&]() {
        if (alg.is_object() && alg.contains("name") && !alg.contains("constants")) {
            const json& name_v = alg["name"];
            if (!name_v.is_string())
                throw ValidationError(path + ": algebra \"name\" must be a string");
            return catalog(name_v.get<std::string>());
        }
        return algebra_from_json(alg, path);
    }();

    const json& nin_v = require_key(doc, "n_inputs", path);
    const json& nh_v = require_key(doc, "n_hidden", path);
    if (!nin_v.is_number_integer() || !nh_v.is_number_integer())
        throw ValidationError(path + ": widths must be integers");
    const json& mode_v = require_key(doc, "output_mode", path);
    const json& act_v = require_key(doc, "activation", path);
    if (!mode_v.is_string() || !act_v.is_string())
        throw ValidationError(path + ": output_mode and activation must be strings");

    VMlp net(std::move(a), nin_v.get<int>(), nh_v.get<int>(),
             output_mode_from_name(mode_v.get<std::string>()),
             activation_from_name(act_v.get<std::string>()));

    const std::vector<double> w =
        require_number_array(require_key(doc, "hidden_weights", path), "\"hidden_weights\"", path);
    const std::vector<double> b =
        require_number_array(require_key(doc, "hidden_biases", path), "\"hidden_biases\"", path);
    const std::vector<double> o =
        require_number_array(require_key(doc, "output_weights", path), "\"output_weights\"", path);

    const std::size_t n = static_cast<std::size_t>(net.algebra().dim());
    const std::size_t wcount = static_cast<std::size_t>(net.n_hidden()) * net.n_inputs() * n;
    const std::size_t bcount = static_cast<std::size_t>(net.n_hidden()) * n;
    const std::size_t ocount = net.param_count() - wcount - bcount;
    if (w.size() != wcount || b.size() != bcount || o.size() != ocount)
        throw ValidationError(path + ": parameter array lengths do not match the declared widths");

    std::span<double> params = net.params();
    std::copy(w.begin(), w.end(), params.begin());
    std::copy(b.begin(), b.end(), params.begin() + wcount);
    std::copy(o.begin(), o.end(), params.begin() + wcount + bcount);
    for (double p : params)
        if (!std::isfinite(p)) throw ValidationError(path + ": parameters must be finite");
    return net;
}

namespace {

// Fixed-point with enough decimals for >= 10 significant digits at any
// magnitude, so curves stay plain decimal for external plotters.
std::string format_mse(double v) {
    if (!std::isfinite(v)) throw NumericError("curve value is not finite");
    int decimals = 12;
    if (v != 0.0) {
        const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(v))));
        decimals = 12 - exponent;
        if (decimals < 0) decimals = 0;
        if (decimals > 330) decimals = 330;
    }
    char buf[400];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

} // namespace

std::string curve_to_csv(std::span<const EpochRecord> curve) {
    std::string out = "epoch,mse\n";
    for (const EpochRecord& rec : curve) {
        out += std::to_string(rec.epoch);
        out += ',';
        out += format_mse(rec.mse);
        out += '\n';
    }
    return out;
}

void write_curve_csv(const std::string& path, std::span<const EpochRecord> curve) {
    write_text_atomic(path, curve_to_csv(curve));
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open \"" + path + "\" for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (!in.good() && !in.eof()) throw ValidationError("failed reading \"" + path + "\"");
    return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot open \"" + tmp + "\" for writing");
        out << text;
        out.flush();
        if (!out.good()) throw ValidationError("failed writing \"" + tmp + "\"");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ValidationError("cannot rename \"" + tmp + "\" to \"" + path + "\"");
    }
}

} // namespace vmlp
