#include "ndsr/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ndsr {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw InstanceFormatError("instance format: " + where + ": " + what);
}

double get_number(const json& j, const std::string& where, bool allow_negative = false) {
    if (!j.is_number()) fail(where, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "value is not finite");
    if (!allow_negative && v < 0.0) fail(where, "negative value");
    return v;
}

int get_int(const json& j, const std::string& where, int lo, int hi) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    long long v = j.get<long long>();
    if (v < lo || v > hi) fail(where, "value out of range");
    return static_cast<int>(v);
}

const json& member(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing key '") + key + "'");
    return *it;
}

// Shortest round-trip decimal rendering, shared by all number output.
void append_number(std::string& out, double v) {
    char buf[64];
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), static_cast<long long>(v));
        out.append(buf, p);
    } else {
        auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        out.append(buf, p);
    }
}

void append_vector(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        append_number(out, v[i]);
    }
    out += ']';
}

std::string escape(const std::string& s) {
    std::string r;
    for (char c : s) {
        switch (c) {
            case '"': r += "\\\""; break;
            case '\\': r += "\\\\"; break;
            case '\n': r += "\\n"; break;
            case '\t': r += "\\t"; break;
            default: r += c;
        }
    }
    return r;
}

}  // namespace

Instance load_instance(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InstanceFormatError(std::string("instance format: ") + e.what());
    }
    if (!doc.is_object()) fail("top level", "expected an object");

    Instance inst;
    inst.name = member(doc, "name", "top level").get<std::string>();
    inst.num_nodes = get_int(member(doc, "num_nodes", "top level"), "num_nodes", 1, 1 << 24);
    inst.num_metrics = get_int(member(doc, "num_metrics", "top level"), "num_metrics", 0, 1 << 16);

    const json& jarcs = member(doc, "arcs", "top level");
    if (!jarcs.is_array()) fail("arcs", "expected an array");
    for (std::size_t i = 0; i < jarcs.size(); ++i) {
        const std::string where = "arcs[" + std::to_string(i) + "]";
        Arc a;
        a.tail = get_int(member(jarcs[i], "tail", where), where + ".tail", 0, inst.num_nodes - 1);
        a.head = get_int(member(jarcs[i], "head", where), where + ".head", 0, inst.num_nodes - 1);
        a.activation_cost = get_number(member(jarcs[i], "F", where), where + ".F");
        if (a.tail == a.head) fail(where, "self-loop");
        inst.arcs.push_back(a);
    }
    for (std::size_t i = 0; i < inst.arcs.size(); ++i)
        for (std::size_t j = i + 1; j < inst.arcs.size(); ++j)
            if (inst.arcs[i].tail == inst.arcs[j].tail && inst.arcs[i].head == inst.arcs[j].head)
                fail("arcs", "duplicate arc (" + std::to_string(inst.arcs[i].tail) + "," +
                                 std::to_string(inst.arcs[i].head) + ")");

    const json& jcoms = member(doc, "commodities", "top level");
    if (!jcoms.is_array()) fail("commodities", "expected an array");
    for (std::size_t i = 0; i < jcoms.size(); ++i) {
        const std::string where = "commodities[" + std::to_string(i) + "]";
        Commodity c;
        c.source = get_int(member(jcoms[i], "source", where), where + ".source", 0, inst.num_nodes - 1);
        c.sink = get_int(member(jcoms[i], "sink", where), where + ".sink", 0, inst.num_nodes - 1);
        if (c.source == c.sink) fail(where, "source equals sink");
        const json& jw = member(jcoms[i], "W", where);
        if (!jw.is_array() || jw.size() != static_cast<std::size_t>(inst.num_metrics))
            fail(where + ".W", "expected " + std::to_string(inst.num_metrics) + " limits");
        for (std::size_t m = 0; m < jw.size(); ++m)
            c.limit.push_back(get_number(jw[m], where + ".W[" + std::to_string(m) + "]"));
        inst.commodities.push_back(c);
    }

    const int na = inst.num_arcs();
    const int nk = inst.num_commodities();
    const int nm = inst.num_metrics;

    const json& jc = member(doc, "flow_costs", "top level");
    inst.shared_costs = member(jc, "shared", "flow_costs").get<bool>();
    const json& jcd = member(jc, "c", "flow_costs");
    auto read_cost_row = [&](const json& row, const std::string& where) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(na))
            fail(where, "expected " + std::to_string(na) + " per-arc costs");
        std::vector<double> r(na);
        for (int a = 0; a < na; ++a) r[a] = get_number(row[a], where + "[" + std::to_string(a) + "]");
        return r;
    };
    if (inst.shared_costs) {
        std::vector<double> row = read_cost_row(jcd, "flow_costs.c");
        inst.flow_cost.assign(nk, row);
    } else {
        if (!jcd.is_array() || jcd.size() != static_cast<std::size_t>(nk))
            fail("flow_costs.c", "expected one row per commodity");
        for (int k = 0; k < nk; ++k)
            inst.flow_cost.push_back(read_cost_row(jcd[k], "flow_costs.c[" + std::to_string(k) + "]"));
    }

    const json& jw = member(doc, "weights", "top level");
    inst.shared_weights = member(jw, "shared", "weights").get<bool>();
    const json& jwd = member(jw, "w", "weights");
    inst.weight_data.assign(static_cast<std::size_t>(nk) * na * nm, 0.0);
    auto read_weight_block = [&](const json& block, int k, const std::string& where) {
        if (!block.is_array() || block.size() != static_cast<std::size_t>(na))
            fail(where, "expected " + std::to_string(na) + " per-arc weight rows");
        for (int a = 0; a < na; ++a) {
            const json& row = block[a];
            const std::string rw = where + "[" + std::to_string(a) + "]";
            if (!row.is_array() || row.size() != static_cast<std::size_t>(nm))
                fail(rw, "expected " + std::to_string(nm) + " metric weights");
            for (int m = 0; m < nm; ++m)
                inst.weight_data[(static_cast<std::size_t>(k) * na + a) * nm + m] =
                    get_number(row[m], rw + "[" + std::to_string(m) + "]");
        }
    };
    if (inst.shared_weights) {
        if (nk == 0) inst.weight_data.assign(static_cast<std::size_t>(na) * nm, 0.0);
        read_weight_block(jwd, 0, "weights.w");
        if (nk == 0) inst.weight_data.clear();
        for (int k = 1; k < nk; ++k)
            for (int a = 0; a < na; ++a)
                for (int m = 0; m < nm; ++m)
                    inst.weight_data[(static_cast<std::size_t>(k) * na + a) * nm + m] =
                        inst.weight_data[(static_cast<std::size_t>(0) * na + a) * nm + m];
    } else {
        if (!jwd.is_array() || jwd.size() != static_cast<std::size_t>(nk))
            fail("weights.w", "expected one block per commodity");
        for (int k = 0; k < nk; ++k) read_weight_block(jwd[k], k, "weights.w[" + std::to_string(k) + "]");
    }

    return inst;
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InstanceFormatError("cannot open instance file: " + path);
    return load_instance(in);
}

std::string save_instance(const Instance& inst) {
    const int na = inst.num_arcs();
    const int nk = inst.num_commodities();
    const int nm = inst.num_metrics;

    std::string out;
    out.reserve(1024 + static_cast<std::size_t>(na) * (nk + nm) * 8);
    out += "{\n";
    out += "  \"name\": \"" + escape(inst.name) + "\",\n";
    out += "  \"num_nodes\": " + std::to_string(inst.num_nodes) + ",\n";
    out += "  \"arcs\": [";
    for (int a = 0; a < na; ++a) {
        out += (a ? ",\n    " : "\n    ");
        out += "{\"tail\": " + std::to_string(inst.arcs[a].tail) +
               ", \"head\": " + std::to_string(inst.arcs[a].head) + ", \"F\": ";
        append_number(out, inst.arcs[a].activation_cost);
        out += "}";
    }
    out += na ? "\n  ],\n" : "],\n";
    out += "  \"commodities\": [";
    for (int k = 0; k < nk; ++k) {
        out += (k ? ",\n    " : "\n    ");
        out += "{\"source\": " + std::to_string(inst.commodities[k].source) +
               ", \"sink\": " + std::to_string(inst.commodities[k].sink) + ", \"W\": ";
        append_vector(out, inst.commodities[k].limit);
        out += "}";
    }
    out += nk ? "\n  ],\n" : "],\n";
    out += "  \"num_metrics\": " + std::to_string(nm) + ",\n";

    out += "  \"flow_costs\": {\"shared\": ";
    out += inst.shared_costs ? "true" : "false";
    out += ", \"c\": ";
    if (inst.shared_costs) {
        append_vector(out, nk ? inst.flow_cost[0] : std::vector<double>(na, 0.0));
    } else {
        out += '[';
        for (int k = 0; k < nk; ++k) {
            if (k) out += ',';
            out += "\n    ";
            append_vector(out, inst.flow_cost[k]);
        }
        out += nk ? "\n  ]" : "]";
    }
    out += "},\n";

    auto append_weight_block = [&](int k) {
        out += '[';
        for (int a = 0; a < na; ++a) {
            if (a) out += ',';
            out += '[';
            for (int m = 0; m < nm; ++m) {
                if (m) out += ',';
                append_number(out, inst.weight(k, a, m));
            }
            out += ']';
        }
        out += ']';
    };
    out += "  \"weights\": {\"shared\": ";
    out += inst.shared_weights ? "true" : "false";
    out += ", \"w\": ";
    if (inst.shared_weights) {
        if (nk)
            append_weight_block(0);
        else {
            out += '[';
            for (int a = 0; a < na; ++a) {
                if (a) out += ',';
                out += '[';
                for (int m = 0; m < nm; ++m) out += (m ? ",0" : "0");
                out += ']';
            }
            out += ']';
        }
    } else {
        out += '[';
        for (int k = 0; k < nk; ++k) {
            if (k) out += ',';
            out += "\n    ";
            append_weight_block(k);
        }
        out += nk ? "\n  ]" : "]";
    }
    out += "}\n}\n";
    return out;
}

void save_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InstanceFormatError("cannot open output file: " + path);
    out << save_instance(inst);
}

bool instances_equal(const Instance& a, const Instance& b) {
    if (a.name != b.name || a.num_nodes != b.num_nodes || a.num_metrics != b.num_metrics ||
        a.num_arcs() != b.num_arcs() || a.num_commodities() != b.num_commodities() ||
        a.shared_costs != b.shared_costs || a.shared_weights != b.shared_weights)
        return false;
    for (int i = 0; i < a.num_arcs(); ++i)
        if (a.arcs[i].tail != b.arcs[i].tail || a.arcs[i].head != b.arcs[i].head ||
            a.arcs[i].activation_cost != b.arcs[i].activation_cost)
            return false;
    for (int k = 0; k < a.num_commodities(); ++k)
        if (a.commodities[k].source != b.commodities[k].source ||
            a.commodities[k].sink != b.commodities[k].sink ||
            a.commodities[k].limit != b.commodities[k].limit)
            return false;
    return a.flow_cost == b.flow_cost && a.weight_data == b.weight_data;
}

}  // namespace ndsr
