from django.apps import AppConfig


class BuckRLConfig(AppConfig):
    name = "buckrl"
    verbose_name = "Buck converter DQN workbench"
