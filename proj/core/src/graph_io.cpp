#include "lassospec/graph_io.hpp"

#include <json.hpp>

namespace lassospec {

namespace {

using nlohmann::json;

std::string require_string(const json& j, const std::string& what) {
    if (!j.is_string()) throw GraphError(what + " must be a string");
    return j.get<std::string>();
}

}  // namespace

MetricGraph parse_graph(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw GraphError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!root.is_object()) throw GraphError("top-level value must be an object");
    if (!root.contains("vertices") || !root["vertices"].is_array())
        throw GraphError("missing \"vertices\" array");
    if (!root.contains("edges") || !root["edges"].is_array())
        throw GraphError("missing \"edges\" array");

    std::set<std::string> vertices;
    for (const json& v : root["vertices"]) {
        const std::string name = require_string(v, "vertex name");
        if (!vertices.insert(name).second) throw GraphError("duplicate vertex '" + name + "'");
    }

    std::vector<Edge> edges;
    for (const json& je : root["edges"]) {
        if (!je.is_object()) throw GraphError("edge entries must be objects");
        Edge e;
        if (!je.contains("id") || !je.contains("from") || !je.contains("to"))
            throw GraphError("edge requires \"id\", \"from\" and \"to\"");
        e.id = require_string(je["id"], "edge id");
        e.from = require_string(je["from"], "edge endpoint");
        e.to = require_string(je["to"], "edge endpoint");
        const bool has_len = je.contains("length");
        const bool has_pi = je.contains("length_pi");
        if (has_len == has_pi)
            throw GraphError("edge '" + e.id + "' needs exactly one of \"length\", \"length_pi\"");
        if (has_len) {
            if (!je["length"].is_number()) throw GraphError("edge length must be a number");
            e.length = EdgeLength::real(je["length"].get<double>());
        } else {
            if (!je["length_pi"].is_number()) throw GraphError("edge length must be a number");
            e.length = EdgeLength::pi_multiple(je["length_pi"].get<double>());
        }
        edges.push_back(std::move(e));
    }

    std::set<std::string> dirichlet;
    if (root.contains("dirichlet")) {
        if (!root["dirichlet"].is_array()) throw GraphError("\"dirichlet\" must be an array");
        for (const json& d : root["dirichlet"]) dirichlet.insert(require_string(d, "dirichlet vertex"));
    }

    return MetricGraph::create(std::move(vertices), std::move(edges), std::move(dirichlet));
}

jout::Value graph_to_json(const MetricGraph& g) {
    jout::Value out = jout::Value::object();
    jout::Value verts = jout::Value::array();
    for (const std::string& v : g.vertices()) verts.push_back(v);
    jout::Value dir = jout::Value::array();
    for (const std::string& d : g.dirichlet()) dir.push_back(d);
    jout::Value edges = jout::Value::array();
    for (const Edge& e : g.edges()) {
        jout::Value je = jout::Value::object();
        je["id"] = e.id;
        je["from"] = e.from;
        je["to"] = e.to;
        if (e.length.is_pi_multiple())
            je["length_pi"] = e.length.pi_coeff();
        else
            je["length"] = e.length.value();
        edges.push_back(std::move(je));
    }
    out["vertices"] = std::move(verts);
    out["edges"] = std::move(edges);
    out["dirichlet"] = std::move(dir);
    return out;
}

std::string serialize_graph(const MetricGraph& g) { return graph_to_json(g).dump(); }

}  // namespace lassospec
