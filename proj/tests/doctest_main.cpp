#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "isc/models.hpp"

int main(int argc, char** argv) {
  isc::set_data_dir(ISC_TEST_DATA_DIR);
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
