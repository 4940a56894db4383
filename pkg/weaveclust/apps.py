from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class WeaveclustConfig(AppConfig):
    name = "weaveclust"
    verbose_name = _("Weaveclust: cluster patterns and N-graphs")
