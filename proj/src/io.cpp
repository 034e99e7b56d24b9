#include "echoloc/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "echoloc/errors.hpp"

namespace echoloc {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

namespace {

std::string array_of_doubles(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt_double(v[i]);
    }
    return out + "]";
}

} // namespace

std::string counting_to_json(const CountingFunction& cf) {
    std::string out = "{\"model\": \"" + json_escape(cf.provenance_model()) +
                      "\", \"point\": " + array_of_doubles(cf.provenance_point()) +
                      ", \"cutoff\": " + fmt_double(cf.cutoff()) + ", \"jumps\": [";
    for (std::size_t i = 0; i < cf.jumps().size(); ++i) {
        if (i) out += ", ";
        out += "{\"lambda\": " + fmt_double(cf.jumps()[i].lambda) +
               ", \"weight\": " + fmt_double(cf.jumps()[i].weight) + "}";
    }
    out += "], \"suppressed\": " + array_of_doubles(cf.suppressed()) + "}\n";
    return out;
}

CountingFunction counting_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("counting JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("counting JSON: expected an object");
    for (const auto& [key, _] : j.items())
        if (key != "model" && key != "point" && key != "cutoff" && key != "jumps" &&
            key != "suppressed")
            throw ParseError("counting JSON: unknown key `" + key + "`");
    for (const char* key : {"model", "point", "cutoff", "jumps", "suppressed"})
        if (!j.contains(key))
            throw ParseError(std::string("counting JSON: missing key `") + key + "`");

    try {
        std::vector<Jump> jumps;
        for (const auto& item : j.at("jumps")) {
            if (!item.is_object() || item.size() != 2 || !item.contains("lambda") ||
                !item.contains("weight"))
                throw ParseError("counting JSON: jump entries need lambda and weight");
            jumps.push_back({item.at("lambda").get<double>(),
                             item.at("weight").get<double>()});
        }
        std::vector<double> suppressed =
            j.at("suppressed").get<std::vector<double>>();
        std::vector<double> point = j.at("point").get<std::vector<double>>();
        return CountingFunction(std::move(jumps), std::move(suppressed),
                                j.at("cutoff").get<double>(),
                                j.at("model").get<std::string>(), std::move(point));
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("counting JSON: ") + e.what());
    }
}

std::string counting_to_csv(const CountingFunction& cf) {
    std::string out = "lambda,weight\n";
    for (const auto& j : cf.jumps())
        out += fmt_double(j.lambda) + "," + fmt_double(j.weight) + "\n";
    return out;
}

std::string report_to_json(const LocationReport& rep) {
    std::string out = "{\"status\": \"" + to_string(rep.status) + "\", \"orbits\": [";
    for (std::size_t i = 0; i < rep.orbits.size(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (std::size_t k = 0; k < rep.orbits[i].size(); ++k) {
            if (k) out += ", ";
            const auto& c = rep.orbits[i][k];
            std::vector<double> coords;
            for (int d = 0; d < c.point.dim; ++d) coords.push_back(c.point[d]);
            out += "{\"point\": " + array_of_doubles(coords) +
                   ", \"residual\": " + fmt_double(c.residual) + "}";
        }
        out += "]";
    }
    return out + "]}\n";
}

std::string failure_to_json(const std::string& graph6,
                            const CospectralityReport& rep) {
    std::string out = "{\"graph6\": \"" + json_escape(graph6) + "\", \"pairs\": [";
    for (std::size_t i = 0; i < rep.non_similar_pairs.size(); ++i) {
        if (i) out += ", ";
        out += "[" + std::to_string(rep.non_similar_pairs[i].first) + ", " +
               std::to_string(rep.non_similar_pairs[i].second) + "]";
    }
    out += "], \"orbits\": [";
    for (std::size_t i = 0; i < rep.orbits.size(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (std::size_t k = 0; k < rep.orbits[i].size(); ++k) {
            if (k) out += ", ";
            out += std::to_string(rep.orbits[i][k]);
        }
        out += "]";
    }
    return out + "]}\n";
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("io", "cannot open `" + tmp + "` for writing");
        f << content;
        f.flush();
        if (!f) {
            std::remove(tmp.c_str());
            throw Error("io", "write to `" + tmp + "` failed");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("io", "cannot move `" + tmp + "` into place");
    }
}

} // namespace echoloc
