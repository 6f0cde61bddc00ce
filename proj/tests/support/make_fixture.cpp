// Writes a tiny two-scan dataset for the command-line smoke test:
//   <dir>/scans/*.bin, <dir>/preds/*.label (semantic predictions with
//   over-segmented instances), <dir>/gt/*.label (ground truth).
#include <filesystem>
#include <iostream>

#include "elc/io_kitti.hpp"
#include "support/scenes.hpp"

namespace fs = std::filesystem;
using namespace elc;

namespace
{

std::vector<io::LabelRecord> records(const std::vector<SemanticId>& semantic, const std::vector<InstanceId>& instance)
{
    std::vector<io::LabelRecord> out(semantic.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = {semantic[i], instance[i]};
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc != 2)
    {
        std::cerr << "usage: make_fixture <dir>\n";
        return 2;
    }
    const fs::path dir = argv[1];
    for (const char* sub : {"scans", "preds", "gt"})
        fs::create_directories(dir / sub);

    // Scan 0: split car, unlabeled box on a road.
    const auto scene = testing::known_fragment_scene();
    io::write_scan(scene.cloud, dir / "scans" / "000000.bin");
    io::write_labels(records(scene.semantic, scene.instance), dir / "preds" / "000000.label");
    std::vector<InstanceId> truth(scene.size(), 0);
    for (std::size_t i = 0; i < scene.size(); ++i)
    {
        if (scene.semantic[i] == 10)
            truth[i] = 1;
        else if (scene.semantic[i] == 0)
            truth[i] = 2;
    }
    io::write_labels(records(scene.semantic, truth), dir / "gt" / "000000.label");

    // Scan 1: three unlabeled objects.
    const auto blobs = testing::three_blob_scene();
    const std::vector<SemanticId> none(blobs.size(), 0);
    io::write_scan(blobs, dir / "scans" / "000001.bin");
    io::write_labels(records(none, std::vector<InstanceId>(blobs.size(), 0)), dir / "preds" / "000001.label");
    std::vector<InstanceId> blob_truth(blobs.size());
    for (std::size_t i = 0; i < blobs.size(); ++i)
        blob_truth[i] = 1 + static_cast<InstanceId>(i / 125);
    io::write_labels(records(none, blob_truth), dir / "gt" / "000001.label");
    return 0;
}
