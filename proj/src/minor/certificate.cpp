#include <charconv>
#include <ostream>
#include <sstream>

#include "hminor/minor.hpp"

namespace hminor {
namespace {

std::vector<std::uint64_t> numbers(std::string_view text, std::size_t lineno) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
        if (pos >= text.size()) break;
        std::size_t stop = pos;
        while (stop < text.size() && text[stop] != ' ' && text[stop] != '\t' && text[stop] != '\r') ++stop;
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + stop, v);
        if (ec != std::errc() || ptr != text.data() + stop || v > 0xffffffffULL)
            throw ParseError("expected a vertex id, got '" + std::string(text.substr(pos, stop - pos)) + "'", lineno);
        out.push_back(v);
        pos = stop;
    }
    return out;
}

}  // namespace

void write_certificate(std::ostream& out, const Graph& h, const MinorEmbedding& emb, const std::string& pattern) {
    std::string name = pattern;
    if (name.empty()) name = pattern_name(h).value_or("custom");
    out << "# pattern " << name << ' ' << h.num_vertices() << ' ' << h.num_edges() << '\n';
    for (std::size_t x = 0; x < emb.branch_sets.size(); ++x) {
        out << x << ':';
        for (Vertex v : emb.branch_sets[x]) out << ' ' << v;
        out << '\n';
    }
    for (const EdgeWitness& w : emb.witnesses) out << w.hx << '-' << w.hy << ": " << w.gu << ' ' << w.gv << '\n';
}

std::string format_certificate(const Graph& h, const MinorEmbedding& emb, const std::string& pattern) {
    std::ostringstream s;
    write_certificate(s, h, emb, pattern);
    return s.str();
}

ParsedCertificate parse_certificate(std::istream& in) {
    ParsedCertificate cert;
    std::string line;
    std::size_t lineno = 0;
    bool witnesses_started = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view text(line);
        if (text.rfind("# pattern", 0) == 0) {
            std::istringstream hs(line.substr(9));
            std::string name;
            std::size_t r = 0, m = 0;
            if (!(hs >> name >> r >> m)) throw ParseError("header must be '# pattern <name> <r> <m>'", lineno);
            cert.pattern = name;
            cert.header_vertices = r;
            cert.header_edges = m;
            continue;
        }
        if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        if (text.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) throw ParseError("expected 'x: ...' or 'x-y: u v'", lineno);
        std::string_view label = text.substr(0, colon);
        std::string_view body = text.substr(colon + 1);
        if (auto dash = label.find('-'); dash != std::string_view::npos) {
            std::string left(label.substr(0, dash)), right(label.substr(dash + 1));
            auto ends = numbers(left + " " + right, lineno);
            auto uv = numbers(body, lineno);
            if (ends.size() != 2 || uv.size() != 2) throw ParseError("witness line must be 'x-y: u v'", lineno);
            witnesses_started = true;
            auto hx = static_cast<Vertex>(ends[0]), hy = static_cast<Vertex>(ends[1]);
            cert.witness_edges.push_back({hx, hy});
            cert.embedding.witnesses.push_back({hx, hy, static_cast<Vertex>(uv[0]), static_cast<Vertex>(uv[1])});
        } else {
            if (witnesses_started) throw ParseError("branch set listed after witness lines", lineno);
            auto id = numbers(label, lineno);
            if (id.size() != 1) throw ParseError("branch set line must start with 'x:'", lineno);
            if (id[0] != cert.embedding.branch_sets.size())
                throw ParseError("branch sets must be listed in order 0, 1, ...", lineno);
            std::vector<Vertex> set;
            for (auto v : numbers(body, lineno)) set.push_back(static_cast<Vertex>(v));
            cert.embedding.branch_sets.push_back(std::move(set));
        }
    }
    return cert;
}

std::vector<EmbeddingViolation> validate_certificate(const Graph& g, const Graph& h, const ParsedCertificate& cert) {
    std::vector<EmbeddingViolation> out;
    using Kind = EmbeddingViolation::Kind;
    if (cert.header_vertices && *cert.header_vertices != h.num_vertices())
        out.push_back({Kind::shape, "header declares " + std::to_string(*cert.header_vertices) + " pattern vertices, pattern has " +
                                        std::to_string(h.num_vertices())});
    if (cert.header_edges && *cert.header_edges != h.num_edges())
        out.push_back({Kind::shape, "header declares " + std::to_string(*cert.header_edges) + " pattern edges, pattern has " +
                                        std::to_string(h.num_edges())});
    for (const auto& [x, y] : cert.witness_edges)
        if (x >= h.num_vertices() || y >= h.num_vertices() || !h.has_edge(x, y))
            out.push_back({Kind::witness, "witness for " + std::to_string(x) + "-" + std::to_string(y) + " is not a pattern edge"});
    auto inner = validate_embedding(g, h, cert.embedding);
    out.insert(out.end(), inner.begin(), inner.end());
    return out;
}

}  // namespace hminor
