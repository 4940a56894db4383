from weaveclust.dot import matrix_dot
from weaveclust.dynkin import (
    cartan_matrix,
    catalog_dump,
    cluster_variable_count,
    coxeter_number,
    parse_type,
    seed_count,
)
from weaveclust.management.base import MatrixInputMixin, Output, WeaveclustCommand
from weaveclust.mutation import classify_type, type_matrix


class Command(MatrixInputMixin, WeaveclustCommand):
    help = "Classify an exchange matrix by Dynkin type, describe a type, or dump the type catalog."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_matrix_arguments(parser, required=False)
        parser.add_argument("--catalog", action="store_true", help="dump every catalog type")
        parser.add_argument("--max-nodes", type=int, help="node budget of the mutation-class search")

    def perform(self, options: dict) -> Output:
        if options["catalog"]:
            return Output(catalog_dump())
        if options.get("type"):
            item = parse_type(options["type"])
            matrix = type_matrix(item)
            data = {"type": str(item), "cartan": cartan_matrix(item).to_list(), "matrix": matrix.to_list()}
            if item.is_finite:
                data["seeds"] = seed_count(item)
                data["cluster_variables"] = cluster_variable_count(item)
                if len(item.components) == 1:
                    data["coxeter_number"] = coxeter_number(item)
            return Output(data, lambda: matrix_dot(matrix))
        matrix = self.matrix_from(options)
        found = classify_type(matrix, self.budget(options))
        return Output({"type": str(found), "matrix": matrix.to_list()}, lambda: matrix_dot(matrix))
