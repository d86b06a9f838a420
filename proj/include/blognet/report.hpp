#pragma once

#include <string>

namespace blognet {

// Markdown digest of the artifact files a pipeline run left in a directory.
// Every section is always emitted; artifacts that are not present are listed
// as absent rather than failing the render.
std::string render_report(const std::string& artifacts_dir);

}  // namespace blognet
