from weaveclust.dot import matrix_dot
from weaveclust.dynkin import coxeter_number, parse_type
from weaveclust.exchange import coxeter_orbit, coxeter_order
from weaveclust.management.base import MatrixInputMixin, Output, WeaveclustCommand
from weaveclust.mutation import coxeter_mutation


class Command(MatrixInputMixin, WeaveclustCommand):
    help = "Order of the Coxeter mutation of a bipartite seed and its orbit."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_matrix_arguments(parser, backend=True)
        parser.add_argument("--depth", type=int, help="largest power searched for a repetition")
        parser.add_argument("--orbit", type=int, help="also list seed digests of the first powers")
        parser.add_argument("--negative", action="store_true", help="list the orbit of the inverse mutation")

    def perform(self, options: dict) -> Output:
        seed = self.seed_from(options)
        data = {
            "sequence": coxeter_mutation(seed.matrix).to_list(),
            "order": coxeter_order(seed, options["depth"]),
        }
        if options.get("type"):
            item = parse_type(options["type"])
            if item.is_finite and len(item.components) == 1:
                data["coxeter_number"] = coxeter_number(item)
        if options["orbit"] is not None:
            data["orbit"] = [key.digest for key in coxeter_orbit(seed, options["orbit"], options["negative"])]
        return Output(data, lambda: matrix_dot(seed.matrix))
