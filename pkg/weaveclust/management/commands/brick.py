from weaveclust.braids import BrickDiagram, brick_quiver, brick_type
from weaveclust.dot import quiver_dot
from weaveclust.management.base import Output, WeaveclustCommand
from weaveclust.serializers import BraidSerializer, deserialize


class Command(WeaveclustCommand):
    help = "Brick diagram, brick quiver and Dynkin type of a positive braid word."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--word", required=True, help='word such as "s1 s2^2 s1" or a family "beta0(2,2,2)"')
        parser.add_argument("--strands", type=int)
        parser.add_argument("--max-nodes", type=int, help="node budget of the type search")

    def perform(self, options: dict) -> Output:
        data = {"word": options["word"]}
        if options["strands"] is not None:
            data["strands"] = options["strands"]
        word = deserialize(BraidSerializer, data)
        quiver = brick_quiver(word)
        result = {
            "word": word.to_dict(),
            "diagram": BrickDiagram.of(word).to_dict(),
            "arrows": [[i + 1, j + 1, multiplicity] for i, j, multiplicity in quiver.arrows],
            "type": str(brick_type(word, self.budget(options))),
        }
        return Output(result, lambda: quiver_dot(quiver))
