#pragma once

// Machine-readable run reports.  The writer is deliberately small and fully
// deterministic: insertion-ordered objects, floats printed with %.17g.

#include <cstdio>
#include <memory>
#include <sstream>
#include <variant>

#include "core.hpp"
#include "weights.hpp"

namespace chiralpotts {

class JsonValue;
using JsonArray = std::vector<JsonValue>;
using JsonObjectEntries = std::vector<std::pair<std::string, JsonValue>>;

class JsonValue {
public:
    JsonValue() : v_(nullptr) {}
    JsonValue(std::nullptr_t) : v_(nullptr) {}
    JsonValue(bool b) : v_(b) {}
    JsonValue(int i) : v_(static_cast<int64_t>(i)) {}
    JsonValue(int64_t i) : v_(i) {}
    JsonValue(uint64_t i) : v_(static_cast<int64_t>(i)) {}
    JsonValue(double d) : v_(d) {}
    JsonValue(const char* s) : v_(std::string(s)) {}
    JsonValue(std::string s) : v_(std::move(s)) {}
    JsonValue(JsonArray a) : v_(std::move(a)) {}
    JsonValue(JsonObjectEntries o) : v_(std::move(o)) {}

    static JsonValue object() { return JsonValue(JsonObjectEntries{}); }
    static JsonValue array() { return JsonValue(JsonArray{}); }

    JsonValue& set(const std::string& key, JsonValue val) {
        auto& obj = std::get<JsonObjectEntries>(v_);
        obj.emplace_back(key, std::move(val));
        return *this;
    }
    JsonValue& push(JsonValue val) {
        std::get<JsonArray>(v_).push_back(std::move(val));
        return *this;
    }

    void dump(std::string& out, int indent = 0) const {
        struct D {
            std::string& out;
            int indent;
            void pad(int n) const { out.append(2 * n, ' '); }
            void operator()(std::nullptr_t) const { out += "null"; }
            void operator()(bool b) const { out += b ? "true" : "false"; }
            void operator()(int64_t i) const { out += std::to_string(i); }
            void operator()(double d) const {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", d);
                out += buf;
            }
            void operator()(const std::string& s) const {
                out += '"';
                for (char c : s) {
                    switch (c) {
                        case '"': out += "\\\""; break;
                        case '\\': out += "\\\\"; break;
                        case '\n': out += "\\n"; break;
                        case '\t': out += "\\t"; break;
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
                out += '"';
            }
            void operator()(const JsonArray& a) const {
                if (a.empty()) { out += "[]"; return; }
                out += "[";
                for (size_t i = 0; i < a.size(); ++i) {
                    if (i) out += ", ";
                    a[i].dump(out, indent);
                }
                out += "]";
            }
            void operator()(const JsonObjectEntries& o) const {
                if (o.empty()) { out += "{}"; return; }
                out += "{\n";
                for (size_t i = 0; i < o.size(); ++i) {
                    pad(indent + 1);
                    out += '"';
                    out += o[i].first;
                    out += "\": ";
                    o[i].second.dump(out, indent + 1);
                    if (i + 1 < o.size()) out += ',';
                    out += '\n';
                }
                pad(indent);
                out += "}";
            }
        };
        std::visit(D{out, indent}, v_);
    }

    std::string dump() const {
        std::string out;
        dump(out, 0);
        out += '\n';
        return out;
    }

private:
    std::variant<std::nullptr_t, bool, int64_t, double, std::string, JsonArray,
                 JsonObjectEntries> v_;
};

inline JsonValue json_complex(cplx z) {
    JsonArray a{JsonValue(z.real()), JsonValue(z.imag())};
    return JsonValue(std::move(a));
}

// {N, W: [re,im] x N, Wbar: [re,im] x N, provenance: {k, seed, point}}
inline JsonValue weight_table_json(const WeightTable& wt) {
    JsonValue j = JsonValue::object();
    j.set("N", wt.N);
    JsonValue W = JsonValue::array(), Wb = JsonValue::array();
    for (int n = 0; n < wt.N; ++n) {
        W.push(json_complex(wt.W[n]));
        Wb.push(json_complex(wt.Wbar[n]));
    }
    j.set("W", std::move(W));
    j.set("Wbar", std::move(Wb));
    if (wt.provenance) {
        JsonValue prov = JsonValue::object();
        prov.set("k", json_complex(wt.provenance->k));
        prov.set("seed", static_cast<int64_t>(wt.provenance->seed));
        JsonValue pt = JsonValue::array();
        for (cplx z : wt.provenance->point_q) pt.push(json_complex(z));
        prov.set("point", std::move(pt));
        j.set("provenance", std::move(prov));
    }
    return j;
}

// One named residual from a named module, checked against a tolerance.
struct Check {
    std::string module;
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass() const { return value <= tolerance; }
};

struct Report {
    std::string command;
    JsonValue config = JsonValue::object();
    std::vector<Check> checks;
    double wall_ms = 0.0;
    int64_t timestamp_ms = 0;

    bool all_pass() const {
        for (const Check& c : checks)
            if (!c.pass()) return false;
        return true;
    }

    std::string to_json() const {
        JsonValue j = JsonValue::object();
        j.set("schema", 1);
        j.set("version", "0.1.0");
        j.set("command", command);
        j.set("config", config);
        JsonValue arr = JsonValue::array();
        for (const Check& c : checks) {
            JsonValue e = JsonValue::object();
            e.set("module", c.module);
            e.set("name", c.name);
            e.set("value", c.value);
            e.set("tolerance", c.tolerance);
            e.set("pass", c.pass());
            arr.push(std::move(e));
        }
        j.set("checks", std::move(arr));
        j.set("pass", all_pass());
        j.set("timestamp_ms", timestamp_ms);
        j.set("wall_ms", wall_ms);
        return j.dump();
    }
};

}  // namespace chiralpotts
