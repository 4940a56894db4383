from django.core.management.base import CommandError

from weaveclust.management.base import Output, WeaveclustCommand
from weaveclust.verify import ALL, SUITES, CheckResult, run_suite


def _table(results: list[CheckResult]) -> str:
    lines = []
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(f"{status}  {result.suite}/{result.name}  [{result.anchor}]  {result.value}")
    passed = sum(result.passed for result in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"


class Command(WeaveclustCommand):
    help = "Run the verification suites and print a pass/fail table."
    formats = ("table", "json")

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.set_defaults(format="table")
        parser.add_argument("--suite", choices=(ALL, *SUITES), default=ALL)
        parser.add_argument("--slow", action="store_true", help="include the long-running checks")
        parser.add_argument("--jobs", type=int, default=1, help="run checks as this many Celery tasks")
        parser.add_argument("--seed", type=int, help="random seed of the equivariance checks, defaults to WEAVECLUST_SEED")

    def perform(self, options: dict) -> Output:
        results = run_suite(options["suite"], options["slow"], options["jobs"], options["seed"])
        self.failed = sum(not result.passed for result in results)
        return Output([result.to_dict() for result in results], text=_table(results))

    def handle(self, *args, **options):
        self.failed = 0
        super().handle(*args, **options)
        if self.failed:
            raise CommandError(f"{self.failed} checks failed", returncode=1)
