import logging

from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.braids import (
    BraidWord,
    braid_equivalent,
    closure_word,
    conjugate_word,
    stabilize,
    stabilize_closure,
)
from weaveclust.exceptions import BudgetExhausted
from weaveclust.management.base import Output, WeaveclustCommand
from weaveclust.serializers import BraidSerializer, deserialize

logger = logging.getLogger(__name__)

TRANSFORMS = {
    "stabilize": stabilize,
    "closure": closure_word,
    "stabilize-closure": stabilize_closure,
    "conjugate": conjugate_word,
}


class Command(WeaveclustCommand):
    help = "Describe, transform or compare positive braid words."
    formats = ("json",)

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--word", required=True, help='word such as "s2 s1^3 s2" or a family "beta(2,3,3)"')
        parser.add_argument("--strands", type=int, help="number of strands, defaults to the largest letter plus one")
        parser.add_argument("--transform", choices=sorted(TRANSFORMS), action="append", default=[])
        parser.add_argument("--to", help="second word; search for a chain of braid moves")
        parser.add_argument("--cyclic", action="store_true", help="allow cyclic rotation of letters")
        parser.add_argument("--budget", type=int, help="largest number of words visited")

    def perform(self, options: dict) -> Output:
        word = self.word(options["word"], options["strands"])
        for name in options["transform"]:
            word = TRANSFORMS[name](word)
        if not options["to"]:
            data = {**word.to_dict(), "length": len(word), "permutation": [i + 1 for i in word.permutation]}
            data["cycle_type"] = list(word.cycle_type)
            return Output(data)
        target = self.word(options["to"], word.strands)
        found = braid_equivalent(word, target, options["cyclic"], options["budget"])
        output = Output({**found.to_dict(), "replayed": found.replay() if found.result is True else False})
        if found.result == "unknown":
            error_msg = format_lazy(_("Braid search stopped after {count} words"), count=found.explored)
            logger.warning(error_msg)
            raise BudgetExhausted(error_msg, partial=output)
        return output

    @staticmethod
    def word(text: str, strands: int | None) -> BraidWord:
        data = {"word": text} if strands is None else {"word": text, "strands": strands}
        return deserialize(BraidSerializer, data)
