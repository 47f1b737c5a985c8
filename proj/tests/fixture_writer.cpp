// Regenerates the bundled end-to-end fixture under data/.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "terracarta/ascii_grid.hpp"
#include "testutil.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);

  terracarta::write_ascii_grid(terracarta::testutil::make_mini_district(),
                               dir / "mini_district.asc");
  std::ofstream villages(dir / "villages.csv", std::ios::binary);
  villages << terracarta::testutil::mini_villages_csv();

  std::cout << "fixture written to " << dir.string() << "\n";
  return 0;
}
