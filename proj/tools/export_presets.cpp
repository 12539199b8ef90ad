// Regenerates the committed files under presets/ from the embedded
// builders. Run after changing a preset so the files and the library
// never drift (the test suite compares them byte for byte).

#include <filesystem>
#include <iostream>

#include "memspike/presets.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: export_presets <presets-dir>\n";
        return 2;
    }
    const std::filesystem::path root(argv[1]);
    for (const auto& [rel, content] : memspike::preset_files()) {
        const std::filesystem::path path = root / rel;
        std::filesystem::create_directories(path.parent_path());
        memspike::write_text_file(path.string(), content);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}
