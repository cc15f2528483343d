#include <gtest/gtest.h>

#include <cstdio>
#include <map>
#include <string>

// Runs every check, then prints one verdict line per numbered criterion. Test
// names start with Cnn_ and a criterion passes only if all its tests pass.
int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  int rc = RUN_ALL_TESTS();
  auto& ut = *::testing::UnitTest::GetInstance();
  std::map<int, std::pair<std::string, bool>> verdicts;
  for (int i = 0; i < ut.total_test_suite_count(); ++i) {
    const auto* suite = ut.GetTestSuite(i);
    for (int j = 0; j < suite->total_test_count(); ++j) {
      const auto* info = suite->GetTestInfo(j);
      std::string name = info->name();
      if (name.size() < 4 || name[0] != 'C' || !info->should_run()) continue;
      int n = std::stoi(name.substr(1, 2));
      auto& v = verdicts.try_emplace(n, name.substr(4), true).first->second;
      v.second = v.second && info->result()->Passed();
    }
  }
  std::printf("\n");
  for (const auto& [n, v] : verdicts) std::printf("criterion %2d %-44s %s\n", n, v.first.c_str(), v.second ? "PASS" : "FAIL");
  return rc;
}
