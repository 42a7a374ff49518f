#include "safeseq/seq_format.hpp"

#include "json.hpp"

namespace safeseq {

std::string node_sequences_tsv(const std::string& graph_id,
                               const std::vector<std::vector<NodeId>>& seqs) {
    std::string out;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        out += graph_id;
        out += '\t';
        out += std::to_string(i);
        out += '\t';
        for (std::size_t j = 0; j < seqs[i].size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(seqs[i][j]);
        }
        out += '\n';
    }
    return out;
}

std::string arc_sequences_tsv(const std::string& graph_id, const DiGraph& g,
                              const std::vector<std::vector<ArcId>>& seqs) {
    std::string out;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        out += graph_id;
        out += '\t';
        out += std::to_string(i);
        out += '\t';
        for (std::size_t j = 0; j < seqs[i].size(); ++j) {
            if (j) out += ' ';
            const Arc& a = g.arc(seqs[i][j]);
            out += std::to_string(a.tail);
            out += ':';
            out += std::to_string(a.head);
            out += ':';
            out += std::to_string(seqs[i][j]);
        }
        out += '\n';
    }
    return out;
}

std::string node_sequences_json(const std::string& graph_id,
                                const std::vector<std::vector<NodeId>>& seqs) {
    nlohmann::ordered_json doc;
    doc["graph"] = graph_id;
    doc["mode"] = "nodes";
    doc["sequences"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        nlohmann::ordered_json item;
        item["index"] = i;
        item["nodes"] = seqs[i];
        doc["sequences"].push_back(std::move(item));
    }
    return doc.dump(2);
}

std::string arc_sequences_json(const std::string& graph_id, const DiGraph& g,
                               const std::vector<std::vector<ArcId>>& seqs) {
    nlohmann::ordered_json doc;
    doc["graph"] = graph_id;
    doc["mode"] = "arcs";
    doc["sequences"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        nlohmann::ordered_json item;
        item["index"] = i;
        item["arcs"] = nlohmann::ordered_json::array();
        for (ArcId id : seqs[i]) {
            const Arc& a = g.arc(id);
            item["arcs"].push_back({{"tail", a.tail}, {"head", a.head}, {"arc", id}});
        }
        doc["sequences"].push_back(std::move(item));
    }
    return doc.dump(2);
}

std::string json_document(const std::vector<std::string>& graph_fragments) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& frag : graph_fragments) arr.push_back(nlohmann::ordered_json::parse(frag));
    return arr.dump(2) + "\n";
}

} // namespace safeseq
