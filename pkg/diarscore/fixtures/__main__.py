import sys

from . import verify_fixtures


def main() -> int:
    results = verify_fixtures()

    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name} [{result.provenance}]")
        for failure in result.failures:
            print(f"    {failure}")

    failed = sum(not result.passed for result in results)
    print(f"{len(results) - failed}/{len(results)} fixtures passed")

    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
