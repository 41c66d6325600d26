// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#include "tvsense/manifest.hpp"

#include <filesystem>
#include <fstream>

#include "tvsense/errors.hpp"

namespace tvsense {

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest '" + path + "'");

    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') continue;

        const std::size_t c1 = line.find(',');
        if (c1 == std::string::npos) {
            throw FormatError("manifest '" + path + "' line " +
                              std::to_string(lineno) + ": expected path,class");
        }
        ManifestEntry entry;
        entry.path = line.substr(0, c1);
        const std::size_t c2 = line.find(',', c1 + 1);
        if (c2 == std::string::npos) {
            entry.label = line.substr(c1 + 1);
        } else {
            entry.label = line.substr(c1 + 1, c2 - c1 - 1);
            entry.split = line.substr(c2 + 1);
        }
        if (entry.path.empty() || entry.label.empty()) {
            throw FormatError("manifest '" + path + "' line " +
                              std::to_string(lineno) + ": empty field");
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string resolve_manifest_path(const std::string& manifest_path,
                                  const std::string& entry_path) {
    namespace fs = std::filesystem;
    if (fs::path(entry_path).is_absolute()) return entry_path;
    return (fs::path(manifest_path).parent_path() / entry_path).string();
}

bool is_audio_label(const std::string& label) {
    return label == "tv" || label == "laptop" || label == "conversation" ||
           label == "silence";
}

bool is_visual_label(const std::string& label) {
    return label == "tv_screen" || label == "picture_frame" ||
           label == "moving_blob" || label == "empty";
}

bool is_tv_label(const std::string& label) {
    return label == "tv" || label == "tv_screen";
}

}  // namespace tvsense
