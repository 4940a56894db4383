from weaveclust.dot import matrix_dot
from weaveclust.management.base import MatrixInputMixin, Output, WeaveclustCommand, one_based
from weaveclust.mutation import coxeter_mutation, mutate_sequence
from weaveclust.seeds import apply_sequence


class Command(MatrixInputMixin, WeaveclustCommand):
    help = "Mutate an exchange matrix or a seed at the given indices, left to right."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_matrix_arguments(parser)
        parser.add_argument("--backend", choices=("pc", "y"), help="mutate a seed of this backend instead of a matrix")
        parser.add_argument("--at", type=int, nargs="*", default=[], help="mutable indices, 1-based")
        parser.add_argument("--coxeter", type=int, default=0, help="apply the Coxeter mutation this many times first")

    def perform(self, options: dict) -> Output:
        indices = one_based(options["at"])
        if options["backend"] or self.is_seed_file(options):
            seed = self.seed_from(options)
            for _step in range(options["coxeter"]):
                seed = apply_sequence(seed, coxeter_mutation(seed.matrix))
            for k in indices:
                seed = seed.mutate(k)
            return Output(seed.to_dict(), lambda: matrix_dot(seed.matrix))
        matrix = self.matrix_from(options)
        for _step in range(options["coxeter"]):
            matrix = mutate_sequence(matrix, coxeter_mutation(matrix))
        for k in indices:
            matrix = matrix.mutate(k)
        return Output({"matrix": matrix.to_list()}, lambda: matrix_dot(matrix))

    def is_seed_file(self, options: dict) -> bool:
        data = self.json_from(options) if options.get("input") else {}
        return "backend" in data
