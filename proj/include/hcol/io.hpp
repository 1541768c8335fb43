#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "graph.hpp"
#include "homomorphism.hpp"
#include "kernel.hpp"
#include "reductions.hpp"
#include "representation.hpp"

namespace hcol {

// Text formats. A graph is a header line `n m`, then m lines `u v`, then
// optional `L v text` label lines; `#` starts a comment line. Derived formats
// append tagged lines:
//   instance  `X v...`                         the vertex cover
//   kernel    `X v...`, `O v...`, `S v s...`, `J {json}`
//   lists     `A v h...`                       one per listed vertex
//   gadget    `T a b [family]`

namespace detail {

struct TextDocument {
    Graph graph;
    std::map<char, std::vector<std::vector<std::string>>> tagged; // tag -> token rows
    std::optional<std::string> json_line;
};

inline std::vector<std::string> split_tokens(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;)
        out.push_back(t);
    return out;
}

inline long long parse_int(const std::string& tok, const std::string& line)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != tok.size())
        throw InvalidArgument("parse: expected an integer, got '" + tok + "' in line: " + line);
    return v;
}

inline Vertex parse_vertex(const std::string& tok, int n, const std::string& line)
{
    const long long v = parse_int(tok, line);
    if (v < 0 || v >= n)
        throw InvalidArgument("parse: vertex " + tok + " out of range in line: " + line);
    return static_cast<Vertex>(v);
}

inline TextDocument read_document(std::istream& in, const std::string& allowed_tags)
{
    TextDocument doc;
    std::string line;
    long long n = -1, m = -1;
    std::vector<Edge> edges;
    std::vector<std::pair<Vertex, std::string>> labels;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        const auto toks = split_tokens(line);
        if (n < 0) {
            if (toks.size() != 2)
                throw InvalidArgument("parse: header must be `n m`, got: " + line);
            n = parse_int(toks[0], line);
            m = parse_int(toks[1], line);
            if (n < 0 || m < 0)
                throw InvalidArgument("parse: negative count in header: " + line);
            continue;
        }
        const char c = toks[0][0];
        if (c == '-' || (c >= '0' && c <= '9')) {
            if (toks.size() != 2)
                throw InvalidArgument("parse: edge line must be `u v`: " + line);
            edges.emplace_back(parse_vertex(toks[0], static_cast<int>(n), line), parse_vertex(toks[1], static_cast<int>(n), line));
            continue;
        }
        if (toks[0].size() != 1)
            throw InvalidArgument("parse: unknown line: " + line);
        if (c == 'L') {
            if (toks.size() < 3)
                throw InvalidArgument("parse: label line must be `L v text`: " + line);
            const Vertex v = parse_vertex(toks[1], static_cast<int>(n), line);
            const auto pos = line.find(toks[1], line.find('L') + 1) + toks[1].size();
            const auto start = line.find_first_not_of(" \t", pos);
            labels.emplace_back(v, line.substr(start));
            continue;
        }
        if (allowed_tags.find(c) == std::string::npos)
            throw InvalidArgument(std::string("parse: line tag '") + c + "' not valid in this file: " + line);
        if (c == 'J') {
            if (doc.json_line)
                throw InvalidArgument("parse: more than one J line");
            doc.json_line = line.substr(line.find('J') + 1);
            continue;
        }
        doc.tagged[c].emplace_back(toks.begin() + 1, toks.end());
    }
    if (n < 0)
        throw InvalidArgument("parse: missing `n m` header");
    if (static_cast<long long>(edges.size()) != m)
        throw InvalidArgument("parse: header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    std::vector<std::string> names;
    if (!labels.empty()) {
        names.resize(static_cast<std::size_t>(n));
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (auto& [v, text] : labels) {
            if (seen[static_cast<std::size_t>(v)])
                throw InvalidArgument("parse: vertex " + std::to_string(v) + " labelled twice");
            seen[static_cast<std::size_t>(v)] = true;
            names[static_cast<std::size_t>(v)] = std::move(text);
        }
        for (std::size_t v = 0; v < names.size(); ++v)
            if (!seen[v])
                names[v] = std::to_string(v);
    }
    for (auto [u, v] : edges)
        if (u == v)
            throw InvalidArgument("parse: self-loop at vertex " + std::to_string(u));
    doc.graph = Graph(static_cast<int>(n), edges, std::move(names));
    if (doc.graph.edge_count() != edges.size())
        throw InvalidArgument("parse: duplicate edge");
    return doc;
}

inline VertexSet parse_set(const std::vector<std::string>& toks, std::size_t from, int n, const std::string& what)
{
    std::vector<Vertex> ids;
    for (std::size_t i = from; i < toks.size(); ++i)
        ids.push_back(parse_vertex(toks[i], n, what));
    VertexSet s(ids);
    if (s.size() != ids.size())
        throw InvalidArgument("parse: repeated vertex in " + what);
    return s;
}

inline const std::vector<std::string>& single_row(const TextDocument& doc, char tag)
{
    const auto it = doc.tagged.find(tag);
    if (it == doc.tagged.end() || it->second.size() != 1)
        throw InvalidArgument(std::string("parse: exactly one ") + tag + " line required");
    return it->second.front();
}

inline void write_set_line(std::ostream& out, char tag, const std::vector<Vertex>& ids)
{
    out << tag;
    for (Vertex v : ids)
        out << ' ' << v;
    out << '\n';
}

} // namespace detail

inline void write_graph(std::ostream& out, const Graph& g)
{
    const auto edges = g.edges();
    out << g.order() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges)
        out << u << ' ' << v << '\n';
    if (g.has_labels())
        for (Vertex v = 0; v < g.order(); ++v)
            out << "L " << v << ' ' << g.label(v) << '\n';
}

inline Graph read_graph(std::istream& in) { return detail::read_document(in, "").graph; }

inline void write_instance(std::ostream& out, const VertexCoverInstance& inst)
{
    write_graph(out, inst.graph);
    detail::write_set_line(out, 'X', inst.cover.ids());
}

inline VertexCoverInstance read_instance(std::istream& in)
{
    const auto doc = detail::read_document(in, "X");
    VertexCoverInstance inst{doc.graph, detail::parse_set(detail::single_row(doc, 'X'), 0, doc.graph.order(), "X line")};
    inst.validate();
    return inst;
}

// ---------------------------------------------------------------------------
// JSON: fields, representations, kernel statistics

inline nlohmann::ordered_json field_to_json(const Field& f)
{
    return {{"p", f.characteristic()}, {"m", f.degree()}, {"modulus", f.modulus()}};
}

inline FieldSpec field_from_json(const nlohmann::json& j)
{
    return std::make_shared<const Field>(j.at("p").get<std::uint32_t>(), j.at("m").get<std::uint32_t>(), j.at("modulus").get<std::vector<std::uint32_t>>());
}

inline nlohmann::ordered_json graph_to_json(const Graph& g)
{
    nlohmann::ordered_json j;
    j["n"] = g.order();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    j["edges"] = edges;
    if (g.has_labels())
        j["labels"] = g.labels();
    return j;
}

inline Graph graph_from_json(const nlohmann::json& j)
{
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j.at("labels").get<std::vector<std::string>>();
    return Graph(n, edges, std::move(labels));
}

/// Entries are stored as base-p digit lists, lowest degree first.
inline nlohmann::ordered_json rep_to_json(const Representation& rep)
{
    rep.validate();
    nlohmann::ordered_json j;
    j["field"] = field_to_json(*rep.field);
    j["d"] = rep.d;
    j["kind"] = to_string(rep.kind);
    j["graph"] = graph_to_json(rep.graph);
    auto vecs = nlohmann::ordered_json::array();
    for (const auto& x : rep.vectors) {
        auto row = nlohmann::ordered_json::array();
        for (auto e : x)
            row.push_back(rep.field->coeffs(e));
        vecs.push_back(row);
    }
    j["vectors"] = vecs;
    return j;
}

inline Representation rep_from_json(const nlohmann::json& j)
{
    try {
        Representation rep;
        rep.field = field_from_json(j.at("field"));
        rep.d = j.at("d").get<int>();
        const auto kind = j.at("kind").get<std::string>();
        require(kind == "independent" || kind == "orthogonal", "representation: unknown kind " + kind);
        rep.kind = kind == "orthogonal" ? RepKind::Orthogonal : RepKind::Independent;
        rep.graph = graph_from_json(j.at("graph"));
        for (const auto& row : j.at("vectors")) {
            FieldVector x;
            for (const auto& e : row)
                x.push_back(rep.field->from_coeffs(e.get<std::vector<std::uint32_t>>()));
            rep.vectors.push_back(std::move(x));
        }
        rep.validate();
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("representation json: ") + e.what());
    }
}

inline void write_rep(std::ostream& out, const Representation& rep) { out << rep_to_json(rep).dump(1) << '\n'; }

inline Representation read_rep(std::istream& in)
{
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("representation json: ") + e.what());
    }
    return rep_from_json(j);
}

/// Elapsed time is left out so that output is reproducible.
inline nlohmann::ordered_json stats_to_json(const KernelStats& s)
{
    return {{"mode", to_string(s.mode)}, {"parameter", s.parameter}, {"k", s.k}, {"vertices", s.vertices}, {"edges", s.edges},
        {"vertex_bound", s.vertex_bound}, {"bit_size_estimate", s.bit_size_estimate}, {"y_count", s.y_count}, {"y_bound", s.y_bound},
        {"basis_kept", s.basis_kept}, {"basis_dropped", s.basis_dropped}};
}

inline KernelStats stats_from_json(const nlohmann::json& j)
{
    try {
        KernelStats s;
        const auto mode = j.at("mode").get<std::string>();
        require(mode == "combinatorial" || mode == "algebraic", "stats: unknown mode " + mode);
        s.mode = mode == "algebraic" ? KernelMode::Algebraic : KernelMode::Combinatorial;
        s.parameter = j.at("parameter").get<int>();
        s.k = j.at("k").get<std::uint64_t>();
        s.vertices = j.at("vertices").get<std::uint64_t>();
        s.edges = j.at("edges").get<std::uint64_t>();
        s.vertex_bound = j.at("vertex_bound").get<std::uint64_t>();
        s.bit_size_estimate = j.at("bit_size_estimate").get<std::uint64_t>();
        s.y_count = j.at("y_count").get<std::uint64_t>();
        s.y_bound = j.at("y_bound").get<std::uint64_t>();
        s.basis_kept = j.at("basis_kept").get<std::uint64_t>();
        s.basis_dropped = j.at("basis_dropped").get<std::uint64_t>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("stats json: ") + e.what());
    }
}

/// The J line carries the statistics and, for algebraic kernels, the field used.
inline void write_kernel_result(std::ostream& out, const KernelResult& r)
{
    write_graph(out, r.graph);
    detail::write_set_line(out, 'X', r.cover.ids());
    detail::write_set_line(out, 'O', r.origin);
    for (const auto& [v, s] : r.provenance) {
        out << "S " << v;
        for (Vertex x : s)
            out << ' ' << x;
        out << '\n';
    }
    auto j = stats_to_json(r.stats);
    if (r.certificate)
        j["field"] = field_to_json(*r.certificate->field);
    out << "J " << j.dump() << '\n';
}

/// Reads everything but the algebraic certificate.
inline KernelResult read_kernel_result(std::istream& in)
{
    const auto doc = detail::read_document(in, "XOSJ");
    const int n = doc.graph.order();
    KernelResult r;
    r.graph = doc.graph;
    r.cover = detail::parse_set(detail::single_row(doc, 'X'), 0, n, "X line");
    for (const auto& tok : detail::single_row(doc, 'O'))
        r.origin.push_back(static_cast<Vertex>(detail::parse_int(tok, "O line")));
    if (const auto it = doc.tagged.find('S'); it != doc.tagged.end())
        for (const auto& row : it->second) {
            require(!row.empty(), "parse: S line needs a vertex");
            const Vertex v = detail::parse_vertex(row[0], n, "S line");
            require(r.provenance.emplace(v, detail::parse_set(row, 1, n, "S line")).second, "parse: repeated S line for vertex " + row[0]);
        }
    require(doc.json_line.has_value(), "parse: missing J line");
    try {
        r.stats = stats_from_json(nlohmann::json::parse(*doc.json_line));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("stats json: ") + e.what());
    }
    return r;
}

// ---------------------------------------------------------------------------
// List instances and gadgets

struct ListInstance {
    Graph graph;
    ListAssignment lists; // one entry per vertex; nullopt means unrestricted

    bool operator==(const ListInstance&) const = default;
};

inline void write_list_instance(std::ostream& out, const ListInstance& li)
{
    write_graph(out, li.graph);
    for (std::size_t v = 0; v < li.lists.size(); ++v)
        if (li.lists[v]) {
            out << "A " << v;
            for (Vertex h : *li.lists[v])
                out << ' ' << h;
            out << '\n';
        }
}

/// List entries are range-checked against H only when reduced.
inline ListInstance read_list_instance(std::istream& in)
{
    const auto doc = detail::read_document(in, "A");
    ListInstance li{doc.graph, ListAssignment(doc.graph.size())};
    if (const auto it = doc.tagged.find('A'); it != doc.tagged.end())
        for (const auto& row : it->second) {
            require(!row.empty(), "parse: A line needs a vertex");
            const Vertex v = detail::parse_vertex(row[0], doc.graph.order(), "A line");
            auto& slot = li.lists[static_cast<std::size_t>(v)];
            require(!slot, "parse: repeated A line for vertex " + row[0]);
            std::vector<Vertex> ids;
            for (std::size_t i = 1; i < row.size(); ++i) {
                const long long h = detail::parse_int(row[i], "A line");
                require(h >= 0, "parse: negative colour in A line");
                ids.push_back(static_cast<Vertex>(h));
            }
            slot = VertexSet(std::move(ids));
        }
    return li;
}

inline void write_gadget(std::ostream& out, const EdgeGadget& g)
{
    write_graph(out, g.f);
    out << "T " << g.a << ' ' << g.b;
    if (!g.family.empty())
        out << ' ' << g.family;
    out << '\n';
}

/// The gadget property is not checked here; make_edge_gadget does that against H.
inline EdgeGadget read_gadget(std::istream& in)
{
    const auto doc = detail::read_document(in, "T");
    const auto& row = detail::single_row(doc, 'T');
    require(row.size() == 2 || row.size() == 3, "parse: T line must be `T a b [family]`");
    EdgeGadget g{doc.graph, detail::parse_vertex(row[0], doc.graph.order(), "T line"), detail::parse_vertex(row[1], doc.graph.order(), "T line"),
        row.size() == 3 ? row[2] : std::string{}};
    require(g.a != g.b, "parse: gadget endpoints must differ");
    return g;
}

} // namespace hcol
