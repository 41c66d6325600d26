// Copyright 2026 TVSense Authors
// Corpus manifest parsing: text lines `relative_path,class[,split]`.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <string>
#include <vector>

namespace tvsense {

struct ManifestEntry {
    std::string path;   // relative to the manifest's directory
    std::string label;  // class name
    std::string split;  // optional third column
};

std::vector<ManifestEntry> read_manifest(const std::string& path);

// Joins an entry path with the directory containing the manifest file.
std::string resolve_manifest_path(const std::string& manifest_path,
                                  const std::string& entry_path);

bool is_audio_label(const std::string& label);
bool is_visual_label(const std::string& label);
bool is_tv_label(const std::string& label);  // "tv" or "tv_screen"

}  // namespace tvsense
