#include "evlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "evlab/errors.hpp"

namespace evlab {

Json make_report(const Json& config) {
    Json doc;
    doc["config"] = config;
    doc["version"] = kToolVersion;
    doc["records"] = Json::array();
    doc["windows"] = Json::object();
    doc["verdicts"] = Json::array();
    doc["citations"] = Json::array();
    return doc;
}

std::string to_text(const Json& doc) { return doc.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp + " for writing");
        out << text;
        if (!out.flush()) throw Error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot rename " + tmp + " to " + path);
}

void write_report(Json doc, const std::string& path, double timing_ms) {
    doc["timing_ms"] = timing_ms;
    const std::string text = to_text(doc);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    write_text_file(path, text);
}

std::string strip_timing(const std::string& report_text) {
    std::istringstream in(report_text);
    std::ostringstream out;
    std::string line;
    bool prev_kept = false;
    std::string pending;
    while (std::getline(in, line)) {
        if (line.find("\"timing_ms\":") != std::string::npos) {
            // The timing entry is last: also drop the comma that preceded it.
            if (prev_kept && !pending.empty() && pending.back() == ',') pending.pop_back();
            continue;
        }
        if (prev_kept) out << pending << "\n";
        pending = line;
        prev_kept = true;
    }
    if (prev_kept) out << pending << "\n";
    return out.str();
}

}  // namespace evlab
