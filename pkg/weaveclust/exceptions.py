from rest_framework.exceptions import APIException, status


class WeaveclustError(APIException):
    """Базовое исключение приложения.

    Помимо HTTP-кода (status_code) каждое исключение несёт код завершения процесса
    (exit_code), который используют management-команды.
    """

    status_code = status.HTTP_409_CONFLICT
    exit_code = 1


class MalformedInput(WeaveclustError):
    status_code = status.HTTP_400_BAD_REQUEST
    default_code = "malformed_input"
    exit_code = 2


class BudgetExhausted(WeaveclustError):
    """Исчерпан бюджет перебора; частичный результат доступен в атрибуте partial."""

    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    default_code = "budget_exhausted"
    exit_code = 3

    def __init__(self, detail=None, code=None, partial=None):
        super().__init__(detail=detail, code=code)
        self.partial = partial


class UnsupportedConfiguration(WeaveclustError):
    default_code = "unsupported_configuration"


class NotBipartite(WeaveclustError):
    default_code = "not_bipartite"


class NotAdmissible(WeaveclustError):
    default_code = "not_admissible"


class BoundaryMismatch(WeaveclustError):
    default_code = "boundary_mismatch"


class RankCapExceeded(WeaveclustError):
    default_code = "rank_cap_exceeded"


class SearchFailure(WeaveclustError):
    default_code = "search_failure"
